"""Newton polygons: lower boundaries, lattice lengths and unimodular reductions.

Exponent points are (i, j) pairs with the y-exponent i on the horizontal axis
and the x-exponent j on the vertical axis.  The lower boundary of a polygon is
the union of edges whose primitive inward normal has strictly positive second
coordinate.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DegeneratePolygon, EdgeNotOnPolygon, ZeroPolynomial
from .ffield import pderiv, pdeg, uni_gcd
from .slopecore import BiPoly


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_chain(points):
    pts = sorted(set(points))
    chain = []
    for pt in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) <= 0:
            chain.pop()
        chain.append(pt)
    return chain


def _upper_chain(points):
    pts = sorted(set(points), reverse=True)
    chain = []
    for pt in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) <= 0:
            chain.pop()
        chain.append(pt)
    return chain


class Edge:
    """A polygon edge with orientation, primitive direction and inward normal."""

    __slots__ = ("start", "end", "length", "direction", "normal")

    def __init__(self, start, end, normal):
        di = end[0] - start[0]
        dj = end[1] - start[1]
        g = gcd(abs(di), abs(dj))
        self.start = start
        self.end = end
        self.length = g
        self.direction = (di // g, dj // g)
        self.normal = normal

    # for a lower edge the primitive direction is (q, -m) with q >= 1 and
    # gcd(m, q) = 1; lambda = m/q is the slope-valuation parameter of the edge
    @property
    def q(self):
        return self.direction[0]

    @property
    def m(self):
        return -self.direction[1]

    @property
    def slope(self):
        return Fraction(self.m, self.q)

    def lattice_points(self):
        i, j = self.start
        di, dj = self.direction
        for t in range(self.length + 1):
            yield (i + t * di, j + t * dj)

    def __eq__(self, other):
        return (
            isinstance(other, Edge)
            and other.start == self.start
            and other.end == self.end
        )

    def __hash__(self):
        return hash((self.start, self.end))

    def __repr__(self):
        return "Edge(%s -> %s, normal=%s)" % (self.start, self.end, self.normal)


def _inward_normal(start, end):
    """Primitive inward normal for an edge of a CCW-ordered polygon."""
    di = end[0] - start[0]
    dj = end[1] - start[1]
    g = gcd(abs(di), abs(dj))
    return (-dj // g, di // g)


class LatticePolygon:
    """Convex hull of a finite set of lattice points, vertices in CCW order."""

    __slots__ = ("vertices",)

    def __init__(self, points):
        points = list(points)
        if not points:
            raise ZeroPolynomial("polygon of an empty point set")
        lower = _lower_chain(points)
        upper = _upper_chain(points)
        verts = lower[:-1] + upper[:-1]
        if not verts:  # single point
            verts = [lower[0]]
        self.vertices = tuple(verts)

    @property
    def dim(self):
        if len(self.vertices) == 1:
            return 0
        if len(self.vertices) == 2:
            return 1
        return 2

    def edges(self):
        """All edges with inward primitive normals (both normals for a segment)."""
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            n = _inward_normal(v[0], v[1])
            return [Edge(v[0], v[1], n), Edge(v[1], v[0], _inward_normal(v[1], v[0]))]
        out = []
        for k in range(len(v)):
            a, b = v[k], v[(k + 1) % len(v)]
            out.append(Edge(a, b, _inward_normal(a, b)))
        return out

    def lower_edges(self):
        edges = [e for e in self.edges() if e.normal[1] > 0]
        edges.sort(key=lambda e: e.start[0])
        return edges

    def lattice_points(self):
        """All lattice points of the lower boundary."""
        pts = []
        for e in self.lower_edges():
            for pt in e.lattice_points():
                if not pts or pts[-1] != pt:
                    pts.append(pt)
        if not pts:
            pts = [min(self.vertices)]
        return pts

    def bounding_rectangle_area(self):
        imin = min(i for i, _ in self.vertices)
        imax = max(i for i, _ in self.vertices)
        jmin = min(j for _, j in self.vertices)
        jmax = max(j for _, j in self.vertices)
        return (imax - imin) * (jmax - jmin)

    def __repr__(self):
        return "LatticePolygon(%s)" % (list(self.vertices),)


def newton_polygon(F):
    if F.is_zero():
        raise ZeroPolynomial("Newton polygon of 0")
    return LatticePolygon(F.support())


def lower_boundary(P):
    if isinstance(P, BiPoly):
        P = newton_polygon(P)
    return P.lower_edges()


def lattice_length(P):
    """r(P) = number of lattice points on the lower boundary minus one."""
    if isinstance(P, BiPoly):
        P = newton_polygon(P)
    return sum(e.length for e in P.lower_edges())


def volume(P):
    """Euclidean area of the polygon via the shoelace formula, as a Fraction."""
    if isinstance(P, BiPoly):
        P = newton_polygon(P)
    v = P.vertices
    if len(v) < 3:
        return Fraction(0)
    acc = 0
    for k in range(len(v)):
        a = v[k]
        b = v[(k + 1) % len(v)]
        acc += a[0] * b[1] - b[0] * a[1]
    return Fraction(abs(acc), 2)


def lower_volume(P):
    """Euclidean area of the convex hull of the lower boundary, as a Fraction."""
    if isinstance(P, BiPoly):
        P = newton_polygon(P)
    chain = []
    for e in P.lower_edges():
        if not chain:
            chain.append(e.start)
        chain.append(e.end)
    if len(chain) < 3:
        return Fraction(0)
    acc = 0
    for k in range(len(chain)):
        a = chain[k]
        b = chain[(k + 1) % len(chain)]
        acc += a[0] * b[1] - b[0] * a[1]
    return Fraction(abs(acc), 2)


class AffineMap:
    """(i, j) -> matrix @ (i, j) + shift, matrix unimodular over Z."""

    __slots__ = ("matrix", "shift")

    def __init__(self, matrix, shift=(0, 0)):
        (a, b), (c, d) = matrix
        det = a * d - b * c
        if det not in (1, -1):
            raise ValueError("matrix %r is not unimodular" % (matrix,))
        self.matrix = ((a, b), (c, d))
        self.shift = tuple(shift)

    @property
    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def apply_point(self, pt):
        i, j = pt
        (a, b), (c, d) = self.matrix
        return (a * i + b * j + self.shift[0], c * i + d * j + self.shift[1])

    def inverse(self):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c  # +-1
        inv = ((d * det, -b * det), (-c * det, a * det))
        ti, tj = self.shift
        si = -(inv[0][0] * ti + inv[0][1] * tj)
        sj = -(inv[1][0] * ti + inv[1][1] * tj)
        return AffineMap(inv, (si, sj))

    def compose(self, other):
        """self after other."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        mat = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        s = self.apply_point(other.shift)
        return AffineMap(mat, s)

    def __eq__(self, other):
        return (
            isinstance(other, AffineMap)
            and other.matrix == self.matrix
            and other.shift == self.shift
        )

    def __hash__(self):
        return hash((self.matrix, self.shift))

    def __repr__(self):
        return "AffineMap(%s, shift=%s)" % (self.matrix, self.shift)


def apply_affine(tau, F):
    """Transform exponents by tau, then translate so min exponents are 0."""
    if isinstance(F, LatticePolygon):
        return LatticePolygon([tau.apply_point(pt) for pt in F.vertices])
    pts = {tau.apply_point((i, j)): c for (i, j), c in F.terms.items()}
    if not pts:
        return F
    imin = min(i for i, _ in pts)
    jmin = min(j for _, j in pts)
    return BiPoly(F.field, {(i - imin, j - jmin): c for (i, j), c in pts.items()})


def _normal_to_maps(w):
    """The two unimodular maps (det +1 / det -1) whose image makes the edge
    with inward normal w vertical; built from an extended gcd of w."""
    a, b = w
    # u*a + v*b = 1 via extended Euclid
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_u, u = u, old_u - qq * u
        old_v, v = v, old_v - qq * v
    if old_r < 0:
        old_u, old_v = -old_u, -old_v
    uu, vv = old_u, old_v
    plus = AffineMap(((a, b), (-vv, uu)))
    minus = AffineMap(((a, b), (vv, -uu)))
    return plus, minus


def minimal_lattice_length(P):
    """(r0, minimizing maps): minimum of r over unimodular images of P.

    One candidate pair of maps per edge normal, following the extended-gcd
    construction; every map achieving the minimum is returned.
    """
    if isinstance(P, BiPoly):
        P = newton_polygon(P)
    edges = P.edges()
    if not edges:
        raise DegeneratePolygon("polygon has no edges")
    best = None
    minimizers = []
    seen = set()
    for e in edges:
        for tau in _normal_to_maps(e.normal):
            if tau in seen:
                continue
            seen.add(tau)
            r = lattice_length(LatticePolygon([tau.apply_point(pt) for pt in P.vertices]))
            if best is None or r < best:
                best = r
                minimizers = [tau]
            elif r == best:
                minimizers.append(tau)
    return best, minimizers


# ------------------------------------------------------------ edge algebra


def edge_polynomial(F, edge):
    """Restriction of F to the lattice points of a lower edge."""
    edges = lower_boundary(F)
    if edge not in edges:
        raise EdgeNotOnPolygon("edge %r is not a lower edge of N(F)" % (edge,))
    pts = set(edge.lattice_points())
    return BiPoly(F.field, {k: c for k, c in F.terms.items() if k in pts})


def edge_to_univariate(F, edge):
    """Write F_E = x^a y^b g(y^q x^{-m}); returns (g, a, b, m, q).

    g is a dense univariate coefficient list indexed by position along the
    edge, starting at the low-y end point.
    """
    FE = edge_polynomial(F, edge)
    b, a = edge.start
    q, m = edge.q, edge.m
    g = [0] * (edge.length + 1)
    for t, pt in enumerate(edge.lattice_points()):
        g[t] = FE.terms.get(pt, 0)
    return g, a, b, m, q


def is_degenerate(F):
    """True iff some lower edge of N(F) carries a non-separable edge polynomial.

    An edge is degenerate when char p divides the edge denominator q (the
    y-roots of the edge polynomial then collapse), or when the univariate
    image g has a repeated root (gcd(g, g') != 1).
    """
    p = F.field.p
    for edge in lower_boundary(F):
        if edge.q % p == 0:
            return True
        g, _, _, _, _ = edge_to_univariate(F, edge)
        dg = pderiv(g, p)
        if not dg:
            return True
        if pdeg(uni_gcd(g, dg, p)) != 0:
            return True
    return False

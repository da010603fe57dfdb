import math
import random
from fractions import Fraction

from slopefactor import (
    AffineMap,
    BiPoly,
    Field,
    apply_affine,
    edge_polynomial,
    edge_to_univariate,
    is_degenerate,
    lattice_length,
    lower_boundary,
    lower_volume,
    minimal_lattice_length,
    newton_polygon,
    volume,
)
from slopefactor.polygon import LatticePolygon

import helpers


F101 = Field(101)


def transformed(P, tau):
    return LatticePolygon([tau.apply_point(v) for v in P.vertices])


def test_newton_polygon_vertices_are_the_support_hull():
    rng = random.Random(20)
    for _ in range(30):
        t = {
            (rng.randrange(8), rng.randrange(8)): rng.randrange(1, 101)
            for _ in range(rng.randrange(2, 9))
        }
        P = newton_polygon(BiPoly(F101, t))
        assert sorted(P.vertices) == sorted(helpers.convex_hull(t.keys()))


def test_volume_matches_shoelace_oracle():
    rng = random.Random(21)
    for _ in range(40):
        pts = [(rng.randrange(9), rng.randrange(9)) for _ in range(rng.randrange(2, 9))]
        P = LatticePolygon(pts)
        assert volume(P) == helpers.shoelace_area(pts)


def test_lower_volume_is_the_area_under_the_lower_boundary_hull():
    # a square: the lower boundary is a single bottom edge, hull area 0
    sq = LatticePolygon([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert lower_volume(sq) == 0 and volume(sq) == 4
    # a bent lower chain has positive area below its endpoints' chord
    bent = LatticePolygon([(0, 2), (1, 0), (2, 2)])
    assert lower_volume(bent) == volume(bent) == 2


def test_lattice_length_is_additive_edge_gcd():
    rng = random.Random(22)
    for _ in range(30):
        pts = [(rng.randrange(9), rng.randrange(9)) for _ in range(rng.randrange(2, 8))]
        P = LatticePolygon(pts)
        total = sum(
            math.gcd(e.end[0] - e.start[0], e.end[1] - e.start[1])
            for e in lower_boundary(P)
        )
        assert lattice_length(P) == total


def test_lower_boundary_normals_point_upward():
    P = LatticePolygon([(0, 3), (1, 1), (2, 0), (2, 4), (0, 5)])
    for e in lower_boundary(P):
        assert e.normal[1] > 0


def test_minimizing_maps_are_unimodular_and_achieve_the_minimum():
    rng = random.Random(23)
    for _ in range(20):
        pts = [(rng.randrange(7), rng.randrange(7)) for _ in range(rng.randrange(2, 7))]
        P = LatticePolygon(pts)
        r0, taus = minimal_lattice_length(P)
        assert r0 <= lattice_length(P)
        assert taus
        for tau in taus:
            assert abs(tau.det) == 1
            assert lattice_length(transformed(P, tau)) == r0


def test_parallelogram_family_has_lattice_length_two():
    # Conv((0,2),(2n,0),(0,2n),(2n,2n)): two lattice points interior to none
    # of the lower edges, r = 2 for every n
    for n in range(1, 7):
        P = LatticePolygon([(0, 2), (2 * n, 0), (0, 2 * n), (2 * n, 2 * n)])
        assert lattice_length(P) == 2
    P2 = LatticePolygon([(0, 2), (4, 0), (0, 4), (4, 4)])
    assert volume(P2) == helpers.shoelace_area([(0, 2), (4, 0), (0, 4), (4, 4)]) == 12


def test_triangle_family_minimal_lattice_length_is_gcd():
    for m, n in ((4, 6), (3, 5), (6, 9)):
        P = LatticePolygon([(0, 0), (m, 0), (0, m), (n, n)])
        assert lattice_length(P) == m + math.gcd(m, n)
        r0, taus = minimal_lattice_length(P)
        assert r0 == math.gcd(m, n)
        # the shear (i,j) -> (j, j-i) reaches the minimum
        shear = AffineMap(((0, 1), (-1, 1)))
        assert lattice_length(transformed(P, shear)) == r0


def test_pentagon_family_minimal_lattice_length_is_two():
    for k, n in ((3, 2), (4, 3)):
        pts = [
            (0, 2 * n),
            (n, 0),
            (k * n, n + 1),
            (k * n - n - 2, 4 * n + 4),
            (0, 4 * n + 4),
        ]
        P = LatticePolygon(pts)
        r0, taus = minimal_lattice_length(P)
        assert r0 == 2
        assert AffineMap(((2, 1), (-1, 0)), shift=(0, 0)) in taus
        stated = AffineMap(((2, 1), (-1, 0)), shift=(-2 * n, k * n))
        assert lattice_length(transformed(P, stated)) == 2


def test_affine_map_algebra():
    tau = AffineMap(((2, 1), (-1, 0)), shift=(3, -1))
    inv = tau.inverse()
    for pt in ((0, 0), (2, 5), (-1, 4)):
        assert inv.apply_point(tau.apply_point(pt)) == pt
        assert tau.compose(inv).apply_point(pt) == pt
    assert tau.det == 1 and inv.det == 1


def test_apply_affine_transforms_the_support():
    F = BiPoly(F101, {(2, 0): 1, (1, 1): 3, (0, 3): 7})
    tau = AffineMap(((0, 1), (-1, 1)))
    G = apply_affine(tau, F)
    # same coefficients, polygon mapped accordingly (up to a lattice shift)
    assert sorted(G.terms.values()) == sorted(F.terms.values())
    r_before = lattice_length(newton_polygon(F))
    PG = newton_polygon(G)
    P_mapped = transformed(newton_polygon(F), tau)
    assert lattice_length(PG) == lattice_length(P_mapped)


def test_edge_polynomials_and_degeneracy():
    # F = y^2 + 2xy + x^2 + x^3 = (y+x)^2 + x^3: separable, but the lower
    # edge polynomial (y+x)^2 is not
    F = BiPoly(F101, {(2, 0): 1, (1, 1): 2, (0, 2): 1, (0, 3): 1})
    P = newton_polygon(F)
    (edge,) = lower_boundary(P)
    E = edge_polynomial(F, edge)
    assert dict(E.terms) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    g, a, b, m, q = edge_to_univariate(F, edge)
    assert g == [1, 2, 1]  # (t+1)^2
    assert (a, b, m, q) == (2, 0, 1, 1)
    assert is_degenerate(F)
    assert not is_degenerate(BiPoly(F101, {(2, 0): 1, (0, 1): 1}))

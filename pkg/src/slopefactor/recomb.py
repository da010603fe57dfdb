"""Recombination of analytic factors into irreducible polynomial factors.

The analytic factors of F in K((x))[y] are computed along the average slope
with finite precision; this module decides which subproducts of them are the
actual irreducible factors of F in K[x,y].  The decision reduces to linear
algebra over K: each candidate vector mu yields a polynomial D_mu that must be
divisible by F, and the divisibility test is linearized by an a-adic euclidean
division with a window argument on degrees.  Over small prime fields a second
linear map (a Niederreiter-style derivative identity) cuts the kernel down to
the true recombination space.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    DegenerateInput,
    NotAPartition,
    NotPrimitive,
    NotSeparable,
    MinimallyDegenerate,
    PrecisionTooLow,
    ZeroPolynomial,
)
from .ffield import (
    pdeg,
    pdivmod,
    pmod,
    pmul,
    pnormalize,
    pscale,
    pshift_scale,
    psub,
    pxgcd,
    series_inv,
    uni_factor,
    uni_find_coprime_irreducible,
    uni_gcd,
)
from .slopecore import (
    BiPoly,
    Rat,
    average_slope,
    as_slope,
    d_lambda,
    lambda_parts,
    reciprocal,
    slope_mq,
    tau_lambda,
    trunc_lambda,
    v_lambda,
)
from .polygon import (
    apply_affine,
    is_degenerate,
    lower_boundary,
    minimal_lattice_length,
    newton_polygon,
)
from .facto import facto


# ------------------------------------------------------------ K[x] content


def x_content(F):
    """gcd in K[x] of all y-coefficients of F (requires x-exponents >= 0)."""
    p = F.field.p
    g = []
    for i in range(F.ord_y(), F.deg_y() + 1):
        row = F.y_coeff_list(i)
        if row:
            g = uni_gcd(g, row, p)
        if pdeg(g) == 0:
            break
    return g


def primitive_part_x(F):
    """(content, F/content) with the K[x] content divided out of every stratum."""
    p = F.field.p
    cont = x_content(F)
    if pdeg(cont) <= 0:
        return cont, F
    out = {}
    for i in range(F.ord_y(), F.deg_y() + 1):
        row = F.y_coeff_list(i)
        if not row:
            continue
        q, r = pdivmod(row, cont, p)
        assert not r
        for j, c in enumerate(q):
            if c:
                out[(i, j)] = c
    return cont, BiPoly(F.field, out)


# --------------------------------------------------- separability in K[x][y]


def _rows_of(F):
    return [F.y_coeff_list(i) for i in range(F.deg_y() + 1)]


def _rows_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _rows_content(rows, p):
    g = []
    for r in rows:
        if r:
            g = uni_gcd(g, r, p)
        if pdeg(g) == 0:
            break
    return g


def _rows_primitive(rows, p):
    g = _rows_content(rows, p)
    if pdeg(g) <= 0:
        return rows
    out = []
    for r in rows:
        if not r:
            out.append([])
        else:
            q, rem = pdivmod(r, g, p)
            assert not rem
            out.append(q)
    return out


def _rows_prem(A, B, p):
    """Pseudo-remainder of A by B in K[x][y] (rows = y-coefficient lists)."""
    A = [r[:] for r in A]
    dB = len(B) - 1
    lcB = B[-1]
    while len(A) - 1 >= dB and _rows_trim(A):
        dA = len(A) - 1
        lead = A[-1]
        A = [pmul(r, lcB, p) for r in A[:-1]]
        shift = dA - dB
        for t in range(dB):
            A[shift + t] = psub(A[shift + t], pmul(lead, B[t], p), p)
        _rows_trim(A)
    return A


def gcd_y_degree(F, G):
    """deg_y of gcd(F, G) in K(x)[y], via a primitive pseudo-remainder chain."""
    p = F.field.p
    A = _rows_trim(_rows_of(F))
    B = _rows_trim(_rows_of(G))
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            return 0
        R = _rows_trim(_rows_prem(A, B, p))
        A, B = B, _rows_primitive(R, p)
    return len(A) - 1


def is_separable(F):
    """True if gcd(F, dF/dy) is trivial in K(x)[y]."""
    Fy = F.deriv_y()
    if Fy.is_zero():
        return F.deg_y() <= 0
    return gcd_y_degree(F, Fy) == 0


# ------------------------------------------------ factor normalization helpers


def _laurent_monic(P, lam, sigma):
    """Scale P by a series in K((x)) so its leading y-coefficient is x^n.

    P approximates an analytic factor with relative lambda-precision sigma;
    the result approximates the y-monic normalization to the same precision.
    """
    field = P.field
    p = field.p
    lc = P.lc_y()  # dict j -> c
    w = min(lc)
    c0 = lc[w]
    T = int(math.ceil(sigma)) + 1
    u = [0] * (max(lc) - w + 1)
    for j, c in lc.items():
        u[j - w] = c
    s = series_inv(u, T, p)  # (u/x^w)^{-1} mod x^T
    S = BiPoly(field, {(0, j - w): c for j, c in enumerate(s) if c})
    M = P * S
    return trunc_lambda(M, lam, v_lambda(P, lam) - w + sigma)


def _right_endpoint(F):
    """(i, j) vertex of the lower boundary with the largest y-exponent."""
    edges = lower_boundary(newton_polygon(F))
    if edges:
        return edges[-1].end
    # 0-dimensional polygon: single support point of minimal (j + eps*i)
    return min(F.support(), key=lambda ij: (ij[1], ij[0]))


def _normalize_right_endpoint(F):
    """(constant, G) with G = F/constant having coefficient 1 there."""
    i, j = _right_endpoint(F)
    c = F.coeff(i, j)
    return c, F.scale(F.field.inv(c))


# ----------------------------------------------------- linear algebra over F_p


def _rref(rows, p):
    """Reduced row echelon form (in place on copies); returns (rows, pivots)."""
    rows = [r[:] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] % p:
                f = rows[k][c]
                rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_echelon(images, s, p):
    """Reduced echelon basis of {mu in F_p^s : sum mu_i * images[i] = 0}.

    images[i] is the (dense) image vector of the i-th canonical basis vector.
    """
    ncols = len(images[0]) if images else 0
    # transpose: constraints are rows, the s unknowns are columns
    mat = [[images[i][k] % p for i in range(s)] for k in range(ncols)]
    rr, pivots = _rref(mat, p)
    free = [c for c in range(s) if c not in pivots]
    basis = []
    for c in free:
        v = [0] * s
        v[c] = 1
        for rowi, pc in enumerate(pivots):
            v[pc] = (-rr[rowi][c]) % p
        basis.append(v)
    rb, _ = _rref(basis, p)
    return rb


def is_partition(basis, s):
    """True if the vectors are 0/1 and each coordinate is covered exactly once."""
    cover = [0] * s
    for v in basis:
        for i, a in enumerate(v):
            if a not in (0, 1):
                return False
            cover[i] += a
    return all(c == 1 for c in cover)


# ------------------------------------------------------- recombination problem


class RecombinationProblem:
    """Holds F, its normalized analytic factors and the derived linear data."""

    def __init__(self, F, factors, lam, sigma, seed=0):
        self.field = F.field
        self.F = F
        self.lam = as_slope(lam)
        self.sigma = Fraction(sigma)
        self.seed = seed
        self.s = len(factors)
        self.d = F.deg_y()
        self.v_l = v_lambda(F, self.lam)
        self.d_l = d_lambda(F, self.lam)
        # y-monic (Laurent) normalization of each analytic factor
        self.monic = [_laurent_monic(P, self.lam, sigma) for P in factors]
        self.shifts = [-min(0, M.v0()) for M in self.monic]
        lc = F.lc_y()
        self.lc_poly = BiPoly(F.field, {(0, j): c for j, c in lc.items()})
        self.G = self._build_g_rows()

    # -- G_i = [ (F / M_i) * dM_i/dy ] truncated at the slope degree of F
    def _build_g_rows(self):
        one = BiPoly.one(self.field)
        pre = [self.lc_poly]
        for M in self.monic[:-1]:
            pre.append(pre[-1] * M)
        suf = [one]
        for M in reversed(self.monic[1:]):
            suf.append(suf[-1] * M)
        suf.reverse()
        self._pre = pre
        self._suf = suf
        out = []
        for i, M in enumerate(self.monic):
            cof = pre[i] * suf[i]
            out.append(trunc_lambda(cof * M.deriv_y(), self.lam, self.d_l))
        return out

    def g_rows(self, extra):
        """G_i rows kept to slope degree d_lambda(F) + extra."""
        if not extra:
            return self.G
        out = []
        for i, M in enumerate(self.monic):
            cof = self._pre[i] * self._suf[i]
            out.append(trunc_lambda(cof * M.deriv_y(), self.lam, self.d_l + extra))
        return out

    def g_mu(self, mu):
        out = BiPoly.zero(self.field)
        for a, G in zip(mu, self.G):
            if a % self.field.p:
                out = out + G.scale(a)
        return out


def d_operator(G, F):
    """D(G) = (G_x F_y - G_y F_x) F_y - (F_xy F_y - F_yy F_x) G."""
    Fx, Fy = F.deriv_x(), F.deriv_y()
    Fxy, Fyy = Fy.deriv_x(), Fy.deriv_y()
    return (G.deriv_x() * Fy - G.deriv_y() * Fx) * Fy - (Fxy * Fy - Fyy * Fx) * G


class _PhiData:
    """Monomial shifts and the a-adic division ring for the divisibility test."""

    def __init__(self, prob):
        self.prob = prob
        F, lam = prob.F, prob.lam
        p = prob.field.p
        m, q = slope_mq(lam)
        self.q = q
        d = F.deg_y()
        self.alpha = (-d) % q
        w0 = self.alpha * lam + prob.v_l
        self.k = -math.floor(w0)  # ceil(-w0)
        self.c_num = int(q * prob.v_l)
        self.Ft = tau_lambda(F.mul_monomial(self.alpha, 0), lam).mul_monomial(
            0, q * self.k
        )
        assert self.Ft.v0() >= 0 and self.Ft.v0() < q
        self.dx = self.Ft.deg_x()
        self.e = self.Ft.deg_y()
        # leading y-coefficient lives in K[x^q]; pick a in K[x^q] coprime to it
        c = self.Ft.y_coeff_list(self.e)
        assert all(v == 0 for j, v in enumerate(c) if j % q)
        self.c = c
        c0 = pnormalize([c[j] for j in range(0, len(c), q)])
        a0 = uni_find_coprime_irreducible(c0, p)
        self.a = pshift_scale(a0, q)

    def _set_windows(self, extra, bound):
        """Pick the a-adic digit windows from actual degrees of the lifted D's.

        Completeness needs m*deg(a) > 2*(dx - v0(Ft)) + extra (the degree of
        an exact quotient, by additivity of the slope degree); soundness needs
        (n+1)*deg(a) > bound and (n+1-m)*deg(a) >= dx.
        """
        p = self.prob.field.p
        dega = pdeg(self.a)
        self.m_win = (2 * (self.dx - self.Ft.v0()) + extra) // dega + 1
        n1 = bound // dega + 1
        n2 = self.m_win - 1 - (-self.dx // dega)
        self.n_win = max(n1, n2, self.m_win)
        self.modulus = [1]
        for _ in range(self.n_win + 1):
            self.modulus = pmul(self.modulus, self.a, p)
        g, u, _ = pxgcd(pmod(self.c, self.modulus, p), self.modulus, p)
        assert pdeg(g) == 0
        self.cinv = pscale(u, pow(g[0], -1, p), p)
        self.Frows = [
            pmod(self.Ft.y_coeff_list(i), self.modulus, p) for i in range(self.e + 1)
        ]

    def lift_all(self, ds):
        """Shifted conjugates of the D_mu with a common x-power clearing
        denominators; fixes the digit windows accordingly."""
        lam = self.prob.lam
        q = lam.denominator
        lifted = []
        for D in ds:
            Dt = tau_lambda(D.mul_monomial(self.alpha, 0), lam).mul_monomial(
                0, q * self.k - 2 * self.c_num
            )
            lifted.append(Dt)
        # F~ has x-content exactly x^v0(F~); a polynomial quotient needs
        # v0(D~) >= v0(F~), so clear all D~ up to that level
        extra = max(
            [0] + [self.Ft.v0() - Dt.v0() for Dt in lifted if not Dt.is_zero()]
        )
        lifted = [Dt.mul_monomial(0, extra) for Dt in lifted]
        bound = max([0] + [Dt.deg_x() for Dt in lifted if not Dt.is_zero()])
        self._set_windows(extra, bound)
        return lifted

    def row(self, Dt):
        """phi image of one lifted D_mu: windowed a-adic digits of Q and R."""
        p = self.prob.field.p
        R = [pmod(Dt.y_coeff_list(i), self.modulus, p) for i in range(Dt.deg_y() + 1)]
        Q = {}
        for t in range(len(R) - 1, self.e - 1, -1):
            if not R[t]:
                continue
            qt = pmod(pmul(R[t], self.cinv, p), self.modulus, p)
            Q[t - self.e] = qt
            R[t] = []
            for u in range(self.e):
                R[t - self.e + u] = pmod(
                    psub(R[t - self.e + u], pmul(qt, self.Frows[u], p), p),
                    self.modulus,
                    p,
                )
        entries = {}
        for yexp, qt in Q.items():
            digits = self._digits(qt)
            for idx in range(self.m_win, self.n_win + 1):
                for xe, cc in enumerate(digits[idx] if idx < len(digits) else []):
                    if cc:
                        entries[(0, yexp, idx, xe)] = cc
        for yexp in range(self.e):
            if yexp < len(R) and R[yexp]:
                for xe, cc in enumerate(R[yexp]):
                    if cc:
                        entries[(1, yexp, 0, xe)] = cc
        return entries

    def _digits(self, f):
        p = self.prob.field.p
        out = []
        while f:
            f, r = pdivmod(f, self.a, p)
            out.append(r)
        return out


def phi_images(prob):
    """Dense matrix rows of mu -> phi(D(G_mu)) on the canonical basis."""
    data = _PhiData(prob)
    lifted = data.lift_all([d_operator(G, prob.F) for G in prob.G])
    sparse = [data.row(Dt) for Dt in lifted]
    keys = sorted(set().union(*[set(r) for r in sparse])) if sparse else []
    idx = {k: t for t, k in enumerate(keys)}
    rows = []
    for r in sparse:
        v = [0] * len(keys)
        for k, c in r.items():
            v[idx[k]] = c
        rows.append(v)
    return rows


def psi_needed_sigma(prob):
    """Least relative precision making the cofactor rows exact through d_l.

    Row errors start strictly above v_lambda(row) + sigma, so sigma >=
    d_lambda(F) - min(v_lambda(row)) pins every row down to its exact
    truncation at slope degree d_lambda(F).
    """
    vg = min(v_lambda(G, prob.lam) for G in prob.G)
    return prob.d_l - vg


def psi_images(prob, basis):
    """Images of the kernel basis under G -> G^p + d^{p-1}/dy^{p-1}(G F^{p-1}).

    The plus sign makes true recombination vectors vanish: for a logarithmic
    derivative a = u'/u one has d^{p-1}(a) = -a^p (Wilson's theorem), hence
    d^{p-1}(G F^{p-1}) = -G^p whenever G/F is the logarithmic derivative of
    an actual polynomial factor.

    Each G_mu is the truncation at slope degree d_lambda(F) of the exact
    series F * sum(mu_i dM_i/dy / M_i); for a true vector that series is
    itself a polynomial of slope degree <= d_lambda(F), so the truncation
    is exact and the image vanishes identically.  Spurious kernel vectors
    leave a truncation remainder that the exact image exposes.  The rows
    must be exact through slope degree d_lambda(F), i.e. sigma must be at
    least psi_needed_sigma(prob); the image is computed exactly with no
    further truncation.
    """
    p = prob.field.p
    Fpow = prob.F.pow(p - 1)
    sparse = []
    for mu in basis:
        G = BiPoly.zero(prob.field)
        for a, Gi in zip(mu, prob.G):
            if a % p:
                G = G + Gi.scale(a)
        T = G * Fpow
        for _ in range(p - 1):
            T = T.deriv_y()
        img = G.pow(p) + T
        sparse.append(dict(img.terms))
    keys = sorted(set().union(*[set(r) for r in sparse])) if sparse else []
    idx = {k: t for t, k in enumerate(keys)}
    rows = []
    for r in sparse:
        v = [0] * len(keys)
        for k, c in r.items():
            v[idx[k]] = c
        rows.append(v)
    return rows


def phi_kernel(prob):
    """Reduced echelon basis of ker(phi), the divisibility-test linear map."""
    rows = phi_images(prob)
    return kernel_echelon(rows, prob.s, prob.field.p)


def psi_refine(prob, basis):
    """Cut ker(phi) down with the characteristic-p derivative map."""
    p = prob.field.p
    images = psi_images(prob, basis)
    beta = kernel_echelon(images, len(basis), p)
    out = []
    for b in beta:
        v = [0] * prob.s
        for coef, vec in zip(b, basis):
            for i, a in enumerate(vec):
                v[i] = (v[i] + coef * a) % p
        out.append(v)
    out, _ = _rref(out, p)
    return out


def reconstruct_factors(prob, basis):
    """Rebuild the polynomial factors from a 0/1 recombination basis.

    Returns the verified list of factors of F (product check against F holds
    exactly), or None if the analytic precision was insufficient.
    """
    field = prob.field
    if not is_partition(basis, prob.s):
        raise NotAPartition("recombination basis is not a 0/1 partition")
    n_tot = sum(prob.shifts)
    lc_deg = max(prob.F.lc_y())
    theta = lc_deg + n_tot + prob.d_l
    out = []
    for v in sorted(basis, key=lambda b: b.index(1)):
        T = prob.lc_poly
        for i, a in enumerate(v):
            if a:
                T = T * prob.monic[i].mul_monomial(0, prob.shifts[i])
            T = trunc_lambda(T, prob.lam, theta)
        if T.is_zero():
            return None
        _, Fj = primitive_part_x(T.drop_negative_x())
        if Fj.is_zero() or Fj.deg_y() < 1:
            return None
        _, Fj = _normalize_right_endpoint(Fj)
        out.append(Fj)
    prod = BiPoly.one(field)
    for Fj in out:
        prod = prod * Fj
    c, Fn = _normalize_right_endpoint(prob.F)
    _, prodn = _normalize_right_endpoint(prod) if not prod.is_zero() else (1, prod)
    if prodn == Fn:
        return out
    return None


# ------------------------------------------------------------- main pipeline


class Factorization:
    """Result of factoring F in K[x,y]: F = unit * product(factors)."""

    __slots__ = ("field", "unit", "factors", "info")

    def __init__(self, field, unit, factors, info):
        self.field = field
        self.unit = unit
        self.factors = factors
        self.info = info

    def product(self):
        out = BiPoly.monomial(self.field, 0, 0, self.unit)
        for f in self.factors:
            out = out * f
        return out


def _segment_factors(F):
    """Factor a quasi-homogeneous polynomial (1-dimensional Newton polygon)."""
    field = F.field
    p = field.p
    pts = sorted(F.support())
    (i0, j0) = pts[0]
    (i1, j1) = pts[-1]
    di, dj = i1 - i0, j1 - j0
    g = math.gcd(abs(di), abs(dj))
    if di == 0:  # univariate in x; content was removed, so this is a unit
        raise NotPrimitive("polynomial in K[x] after content removal")
    q, step = di // g, dj // g
    coeffs = [0] * (g + 1)
    for (i, j), c in F.terms.items():
        t = (i - i0) // q
        assert i == i0 + t * q and j == j0 + t * step
        coeffs[t] = c
    lc, parts = uni_factor(pnormalize(coeffs), p)
    unit = lc
    out = []
    for gk, mult in parts:
        D = pdeg(gk)
        w = -min(0, D * step)
        terms = {}
        for t, c in enumerate(gk):
            if c:
                terms[(t * q, t * step + w)] = c
        out.extend([BiPoly(field, terms)] * mult)
    return unit, out


def _strata_count(F):
    return len({i for i, _ in F.terms})


def factorization(F, seed=0):
    """Irreducible factorization of F in K[x,y].

    F must be primitive in K[x] and separable in y; the slope factorization
    must stay non-degenerate along the way.  Returns a Factorization with
    unit in K and factors sorted canonically; multiplicities are all 1.
    """
    if F.is_zero():
        raise ZeroPolynomial("factorization of 0")
    field = F.field
    F_input = F
    info = {"method": None, "lam": None, "sigma": None, "s": None, "depth": 0}
    factors = []
    unit = 1
    cont = x_content(F)
    if pdeg(cont) > 0:
        raise NotPrimitive("nontrivial content in K[x]")
    if pdeg(cont) == 0:
        unit = unit * cont[0] % field.p
        F = F.scale(field.inv(cont[0]))
    r = F.ord_y()
    if r > 1:
        raise NotSeparable("y^%d divides the input" % r)
    if r == 1:
        factors.append(BiPoly.monomial(field, 1, 0))
        F = F.mul_monomial(-1, 0)
    if F.deg_y() == 0:
        # constant after content/trivial-factor removal
        c = F.coeff(0, 0)
        info["method"] = "unit"
        return Factorization(field, unit * c % field.p, factors, info)
    if not is_separable(F):
        raise NotSeparable("gcd(F, dF/dy) is nontrivial")
    P = newton_polygon(F)
    if P.dim <= 1:
        u, segs = _segment_factors(F)
        info["method"] = "segment"
        factors.extend(segs)
        factors.sort(key=lambda G: G.sort_key())
        return Factorization(field, unit * u % field.p, factors, info)
    if F.deg_y() == 1:
        info["method"] = "linear"
        c, Fn = _normalize_right_endpoint(F)
        factors.append(Fn)
        factors.sort(key=lambda G: G.sort_key())
        return Factorization(field, unit * c % field.p, factors, info)

    flipped = False
    lam = average_slope(F)
    if lam < 0:
        F = reciprocal(F)
        flipped = True
        lam = average_slope(F)
    if is_degenerate(F):
        raise DegenerateInput("degenerate lower edge on the Newton polygon")
    c, F = _normalize_right_endpoint(F)
    unit = unit * c % field.p

    d = F.deg_y()
    v_l, d_l = v_lambda(F, lam), d_lambda(F, lam)
    _, _, m_l = lambda_parts(F, lam)
    base = (d_l - v_l) + m_l + (lam if lam > 0 else 0)
    # reconstruction may need to resolve cofactor leading coefficients and
    # Laurent shifts on top of the factor supports; that deficit is bounded by
    # the x-span of lc_y(F) plus lam*d
    lc = F.lc_y()
    bump = (d_l - v_l) + (max(lc) - min(lc)) + lam * d + 1
    feasible = field.p * field.p * d * F.deg_x() <= 100000
    core = None
    last_exc = None
    for attempt in range(5):
        sigma = base + attempt * bump
        an = facto(F, lam, sigma, seed=seed)
        info["lam"] = lam
        info["sigma"] = sigma
        info["s"] = len(an.factors)
        info["depth"] = an.trace.depth()
        if len(an.factors) == 1:
            info["method"] = "irreducible"
            core = [F]
            break
        prob = RecombinationProblem(F, an.factors, lam, sigma - m_l, seed=seed)
        basis = phi_kernel(prob)
        got = None
        if is_partition(basis, prob.s):
            got = reconstruct_factors(prob, basis)
        if got is not None:
            info["method"] = "phi"
            core = got
            break
        # over small characteristic ker(phi) may be too coarse (constant
        # residues outside the prime field slip through); refine with the
        # derivative map, but only after one precision bump, since refining
        # cannot repair a pure precision problem and retrying with a larger
        # sigma often is the fix.  The refine step computes p-th powers, so
        # gate it by a work estimate; it never removes true vectors, so it is
        # safe to attempt whenever it is affordable.
        if feasible and attempt >= 1:
            # the derivative map needs rows exact through slope degree
            # d_lambda(F); upgrade the analytic factorization if short
            need = psi_needed_sigma(prob)
            if prob.sigma < need:
                sigma = need + m_l
                an = facto(F, lam, sigma, seed=seed)
                info["sigma"] = sigma
                info["s"] = len(an.factors)
                info["depth"] = an.trace.depth()
                prob = RecombinationProblem(
                    F, an.factors, lam, sigma - m_l, seed=seed
                )
                basis = phi_kernel(prob)
            basis = psi_refine(prob, basis)
            if is_partition(basis, prob.s):
                got = reconstruct_factors(prob, basis)
            if got is not None:
                info["method"] = "psi"
                core = got
                break
        last_exc = PrecisionTooLow(
            "reconstruction failed at sigma = %s" % sigma
        )
    if core is None:
        raise last_exc
    if flipped:
        core = [reciprocal(G) for G in core]
        core = [_normalize_right_endpoint(G)[1] for G in core]
    factors.extend(core)
    factors.sort(key=lambda G: G.sort_key())
    # the factors were renormalized along the way; recover the global unit
    prod = BiPoly.one(field)
    for G in factors:
        prod = prod * G
    key = next(iter(prod.terms))
    unit = F_input.coeff(*key) * pow(prod.terms[key], -1, field.p) % field.p
    if not prod.scale(unit) == F_input:
        raise PrecisionTooLow("factor product does not reproduce the input")
    return Factorization(field, unit, factors, info)


def _match_up_to_monomial(A, B):
    """True if A = c * x^a * y^b * B for some constant c."""
    if A.is_zero() or B.is_zero():
        return A.is_zero() and B.is_zero()
    ka = sorted(A.terms)
    kb = sorted(B.terms)
    if len(ka) != len(kb):
        return False
    di, dj = ka[0][0] - kb[0][0], ka[0][1] - kb[0][1]
    if any(ia - ib != di or ja - jb != dj for (ia, ja), (ib, jb) in zip(ka, kb)):
        return False
    p = A.field.p
    c = A.terms[ka[0]] * pow(B.terms[kb[0]], -1, p) % p
    return all(A.terms[(ib + di, jb + dj)] == c * cb % p for (ib, jb), cb in B.terms.items())


def factor_minimal(F, seed=0):
    """Factor F after a unimodular monomial change making its polygon smallest.

    Tries every affine map achieving the minimal lattice length r0; returns
    (Factorization, tau, r0) for the first map whose image factors cleanly.
    Raises MinimallyDegenerate if all minimizing maps lead to degenerate or
    non-separable images.
    """
    if F.is_zero():
        raise ZeroPolynomial("factorization of 0")
    P = newton_polygon(F)
    r0, taus = minimal_lattice_length(P)
    last = None
    for tau in taus:
        G = apply_affine(tau, F)
        try:
            res = factorization(G, seed=seed)
        except (DegenerateInput, NotSeparable, NotPrimitive) as exc:
            last = exc
            continue
        inv = tau.inverse()
        pulled = []
        for H in res.factors:
            Hb = apply_affine(inv, H)
            if Hb.deg_y() == 0 and Hb.deg_x() == 0:
                continue
            pulled.append(_normalize_right_endpoint(Hb)[1])
        prod = BiPoly.one(F.field)
        for H in pulled:
            prod = prod * H
        if _match_up_to_monomial(prod, F):
            pulled.sort(key=lambda H: H.sort_key())
            out = Factorization(F.field, res.unit, pulled, dict(res.info))
            out.info["r0"] = r0
            return out, tau, r0
        last = MinimallyDegenerate("pulled-back factors do not recompose")
    raise MinimallyDegenerate(str(last) if last else "no admissible minimizing map")

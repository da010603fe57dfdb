"""Arithmetic in the slope rings A_lambda and lambda-adic partial factorization.

A_lambda = K((x^q))[x^m y] is carried on BiPoly supports: a term (i, j) belongs
iff i = alpha_lambda(j) mod q.  Division and Hensel lifting are performed on
the Gauss-valuation side (after tau_lambda); partial_facto conjugates a
polynomial through tau_lambda, lifts the coprime initial factorization and
pulls each branch back with its own normalizing monomial.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .errors import (
    BadLeadingValuation,
    DegenerateEdge,
    InitMismatch,
    NotCoprime,
    NotInApl,
    NotLambdaMonic,
    ZeroPolynomial,
)
from .ffield import (
    check_coprime,
    pdeg,
    pmonic,
    pmul,
    pnormalize,
    pshift_scale,
    pxgcd,
    series_inv,
    uni_factor,
)
from .slopecore import (
    BiPoly,
    alpha_lambda,
    as_slope,
    in_lambda,
    is_in_Apl,
    is_lambda_monic,
    reciprocal,
    slope_mq,
    tau_lambda,
    tau_lambda_inverse,
    trunc_lambda,
    v_lambda,
)


def _require_apl(F, lam, what="operand"):
    if not is_in_Apl(F, lam):
        raise NotInApl("%s is not in A_lambda for lambda=%s" % (what, lam))


def _trunc_y(F, ymax):
    """Keep terms with y-exponent < ymax."""
    return BiPoly(F.field, {k: c for k, c in F.terms.items() if k[0] < ymax})


def apl_mul_trunc(G, H, lam, n):
    """Product of A_lambda elements, correct modulo x^{n + v0(G) + v0(H)}."""
    _require_apl(G, lam, "G")
    _require_apl(H, lam, "H")
    if G.is_zero() or H.is_zero():
        return BiPoly.zero(G.field)
    vg, vh = G.v0(), H.v0()
    R = G.trunc_x(vg + n) * H.trunc_x(vh + n)
    return R.trunc_x(vg + vh + n)


def apl_invert_unit(u, lam, n):
    """Inverse of a unit u in K[[x^q]] modulo x^n."""
    _require_apl(u, lam, "u")
    if u.deg_y() > 0:
        raise BadLeadingValuation("unit must have y-degree 0")
    _, q = slope_mq(lam)
    dense = u.y_coeff_list(0)
    if not dense or dense[0] == 0:
        raise BadLeadingValuation("u(0) = 0: not a unit of K[[x^q]]")
    comp = dense[::q]
    inv = series_inv(comp, -(-n // q), u.field.p)
    return BiPoly(u.field, {(0, q * t): c for t, c in enumerate(inv) if c}).trunc_x(n)


def _newton_invert_y(T, ymax, xprec):
    """Inverse of T (constant y-term 1) modulo y^ymax, x-precision xprec."""
    H = BiPoly.one(T.field)
    prec = 1
    Tt = _trunc_y(T.trunc_x(xprec), ymax)
    while prec < ymax:
        prec = min(2 * prec, ymax)
        prod = _trunc_y((Tt * H).trunc_x(xprec), prec)
        two = BiPoly.one(T.field).scale(2) - prod
        H = _trunc_y((H * two).trunc_x(xprec), prec)
    return H


def _rev_y(F, d):
    """y^d F(x, 1/y) for F of y-degree <= d."""
    return BiPoly(F.field, {(d - i, j): c for (i, j), c in F.terms.items()})


def apl_div_trunc(F, G, lam, n):
    """Division with remainder in A_lambda, with Gauss-valuation precision n.

    Returns (Q, R) with deg_y(R) < deg_y(G) and
    v0(F - (Q G + R)) >= v0(F) + n.  Requires v0(lc_y(G)) = v0(G).
    """
    _require_apl(F, lam, "F")
    _require_apl(G, lam, "G")
    if G.is_zero():
        raise ZeroDivisionError("division by zero")
    if F.is_zero():
        return BiPoly.zero(F.field), BiPoly.zero(F.field)
    vG = G.v0()
    lc = G.lc_y()
    if min(lc) != vG:
        raise BadLeadingValuation("v0(lc_y(G)) = %s != v0(G) = %s" % (min(lc), vG))
    p = F.field.p
    k = -vG
    alpha = alpha_lambda(k, lam)
    G0 = G.mul_monomial(alpha, k)
    F0 = F.mul_monomial(alpha, k)
    e = G0.deg_y()
    d = F0.deg_y()
    if d < e:
        return BiPoly.zero(F.field), F
    NF = F0.v0() + n

    # make G monic: invert the leading coefficient series (a unit of K[[x^q]])
    u = G0.y_coeff_list(e)
    uinv_dense = series_inv(u, n, p)
    uinv = BiPoly.from_univariate_in_x(F.field, uinv_dense)
    G1 = (uinv * G0).trunc_x(n)
    G1 = BiPoly(
        F.field,
        {k2: c for k2, c in G1.terms.items() if k2[0] != e} | {(e, 0): 1},
    )

    # reciprocal trick: invert rev(G1) in K[[x]][[y]] by Newton iteration
    xprec_inv = n + max(0, -F0.v0())
    H = _newton_invert_y(_rev_y(G1, e), d - e + 1, xprec_inv)
    Qrev = _trunc_y((_rev_y(F0, d) * H).trunc_x(NF), d - e + 1)
    Q1 = _rev_y(Qrev, d - e)
    R0 = (F0 - Q1 * G1).trunc_x(NF)
    assert R0.is_zero() or R0.deg_y() < e, "division remainder degree overflow"
    Q = (uinv * Q1).trunc_x(NF)
    R = R0.mul_monomial(-alpha, -k)
    return Q, R


# ---------------------------------------------------------------- hensel


def _divmod_monic_y(A, B, xprec):
    """Classical division of A by monic-in-y B, truncating at x^xprec."""
    e = B.deg_y()
    Q = BiPoly.zero(A.field)
    R = A.trunc_x(xprec)
    while not R.is_zero() and R.deg_y() >= e:
        dR = R.deg_y()
        lead = R.y_stratum(dR).mul_monomial(-e, 0)
        Q = Q + lead
        R = (R - lead * B).trunc_x(xprec)
    return Q, R


def _hensel_step(f, g, h, s, t, k2):
    """One quadratic lifting step: from data valid mod x^k to mod x^k2.

    h is monic in y; returns (g1, h1, s1, t1) with f = g1 h1 mod x^k2 and
    s1 g1 + t1 h1 = 1 mod x^k2.
    """
    one = BiPoly.one(f.field)
    e = (f - g * h).trunc_x(k2)
    _, r = _divmod_monic_y((s * e).trunc_x(k2), h, k2)
    h1 = h + r
    g1, rem = _divmod_monic_y(f.trunc_x(k2), h1, k2)
    b = ((s * g1 + t * h1).trunc_x(k2) - one).trunc_x(k2)
    c, dd = _divmod_monic_y((s * b).trunc_x(k2), h1, k2)
    s1 = (s - dd).trunc_x(k2)
    t1 = (t - t * b - c * g1).trunc_x(k2)
    return g1, h1, s1, t1


def _lift_pair(f, g0, h0, s0, t0, n):
    """Lift f = g0 h0 (mod x) with Bezout s0 g0 + t0 h0 = 1 to precision x^n."""
    g, h, s, t = g0, h0, s0, t0
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        g, h, s, t = _hensel_step(f.trunc_x(k2), g, h, s, t, k2)
        k = k2
    return g, h


def _bezout_in_yq(a, b, q, p):
    """Bezout pair for coprime a, b in K[y^q], computed on compressed polys."""
    ac, bc = a[::q], b[::q]
    d, s, t = pxgcd(ac, bc, p)
    if pdeg(d) != 0:
        raise NotCoprime("initial factors share a root")
    return pshift_scale(s, q), pshift_scale(t, q)


def _split_monic(f, inits, q, n):
    """Recursively split monic f whose inits (monic, coprime, in K[y^q]) multiply
    to f(0, y)."""
    if len(inits) == 1:
        return [f.trunc_x(n)]
    mid = len(inits) // 2
    left, right = inits[:mid], inits[mid:]
    p = f.field.p
    a0 = [1]
    for w in left:
        a0 = pmul(a0, w, p)
    b0 = [1]
    for w in right:
        b0 = pmul(b0, w, p)
    s, t = _bezout_in_yq(a0, b0, q, p)
    A0 = BiPoly.from_univariate_in_y(f.field, a0)
    B0 = BiPoly.from_univariate_in_y(f.field, b0)
    S = BiPoly.from_univariate_in_y(f.field, s)
    T = BiPoly.from_univariate_in_y(f.field, t)
    A, B = _lift_pair(f, A0, B0, S, T, n)
    return _split_monic(A, left, q, n) + _split_monic(B, right, q, n)


def apl_hensel(F, inits, lam, n):
    """Multifactor Hensel lifting in A_lambda^+ to precision x^n.

    `inits` is the initial factorization of F(0, y): a list of monic
    univariate polynomials in y^q followed by a constant list [c].  Returns
    the lifted factors in the same order (unit branch last).
    """
    lam = as_slope(lam)
    _require_apl(F, lam, "F")
    if F.is_zero():
        raise ZeroPolynomial("cannot lift a factorization of 0")
    if F.v0() < 0:
        raise NotInApl("F is not in A_lambda^+ (negative x-valuation)")
    _, q = slope_mq(lam)
    p = F.field.p
    *monic_inits, unit = inits
    if len(unit) != 1 or unit[0] % p == 0:
        raise InitMismatch("last initial factor must be a nonzero constant")
    c = unit[0] % p
    for w in monic_inits:
        if not w or w[-1] % p != 1:
            raise InitMismatch("initial factors must be monic")
        if any(cc and (idx % q) for idx, cc in enumerate(w)):
            raise InitMismatch("initial factor not supported on y^q powers")
    check_coprime(monic_inits, p)
    f0 = F.at_x0()
    prod = [c]
    for w in monic_inits:
        prod = pmul(prod, w, p)
    if pnormalize(list(prod)) != f0:
        raise InitMismatch("product of initial factors differs from F(0, y)")

    M0 = [1]
    for w in monic_inits:
        M0 = pmul(M0, w, p)

    lc = F.lc_y()
    F_monic = lc == {0: 1}
    if not monic_inits:
        return [F.trunc_x(n)]
    if F_monic and F.deg_y() == pdeg(M0):
        # no unit branch to split off
        c_inv = pow(c, -1, p)
        M = F.scale(c_inv)
        U = BiPoly.monomial(F.field, 0, 0, c)
    else:
        U0 = BiPoly.monomial(F.field, 0, 0, c)
        M0b = BiPoly.from_univariate_in_y(F.field, M0)
        S = BiPoly.monomial(F.field, 0, 0, pow(c, -1, p))
        T = BiPoly.zero(F.field)
        U, M = _lift_pair(F, U0, M0b, S, T, n)
        U = U.trunc_x(n)
    parts = _split_monic(M, monic_inits, q, n)
    return parts + [U.trunc_x(n)]


# ------------------------------------------------------- lambda-side wrappers


def lambda_mul_trunc(G, H, lam, sigma):
    """Product truncated at relative lambda-precision sigma."""
    lam = as_slope(lam)
    sigma = Fraction(sigma)
    if G.is_zero() or H.is_zero():
        return BiPoly.zero(G.field)
    vg = v_lambda(G, lam)
    vh = v_lambda(H, lam)
    P = trunc_lambda(G, lam, vg + sigma) * trunc_lambda(H, lam, vh + sigma)
    return trunc_lambda(P, lam, vg + vh + sigma)


def lambda_div_trunc(F, G, lam, sigma):
    """lambda-adic division by a lambda-monic G.

    Returns (Q, R) with deg_y(R) < deg_y(G) and
    v_lambda(F - (Q G + R)) >= v_lambda(F) + sigma.
    """
    lam = as_slope(lam)
    sigma = Fraction(sigma)
    if not is_lambda_monic(G, lam):
        raise NotLambdaMonic("divisor is not lambda-monic")
    if F.is_zero():
        return BiPoly.zero(F.field), BiPoly.zero(F.field)
    _, q = slope_mq(lam)
    n = max(1, ceil(q * sigma))
    Fh = tau_lambda(F, lam)
    Gh = tau_lambda(G, lam)
    Qh, Rh = apl_div_trunc(Fh, Gh, lam, n)
    return tau_lambda_inverse(Qh, lam), tau_lambda_inverse(Rh, lam)


# --------------------------------------------------- initial factorization


def init_facto(F, lam, seed=0):
    """Coprime factorization of the lambda-initial part of F (eq. of the form
    In = y^s * p_1 ... p_k * (u x^a)).

    Returns (s, middles, unit_monomial) where middles is a list of
    (P_l, g_l, e_l): P_l the lambda-homogeneous monic block, g_l the monic
    irreducible univariate, e_l its multiplicity.
    """
    lam = as_slope(lam)
    if F.is_zero():
        raise ZeroPolynomial("initial factorization of 0")
    m, q = slope_mq(lam)
    p = F.field.p
    In = in_lambda(F, lam)
    s = In.ord_y()
    a = min(j for i, j in In.terms if i == s)
    T = (In.deg_y() - s) // q
    g = [0] * (T + 1)
    for (i, j), c in In.terms.items():
        g[(i - s) // q] = c
    pnormalize(g)
    lc_g, factors = uni_factor(g, p, seed) if pdeg(g) >= 1 else (g[0], [])
    middles = []
    deg_sum = 0
    for g_l, e_l in factors:
        h = [1]
        for _ in range(e_l):
            h = pmul(h, g_l, p)
        D = pdeg(h)
        deg_sum += D
        P_l = BiPoly(F.field, {(q * t, m * (D - t)): c for t, c in enumerate(h) if c})
        middles.append((P_l, g_l, e_l))
    unit = BiPoly.monomial(F.field, 0, a - m * deg_sum, lc_g)
    # sanity: the blocks recompose the initial part
    check = BiPoly.monomial(F.field, s, 0)
    for P_l, _, _ in middles:
        check = check * P_l
    check = check * unit
    if check != In:
        raise InitMismatch("initial blocks do not recompose In_lambda(F)")
    return s, middles, unit


class PartialFactorization:
    """Result of one lambda-adic Hensel splitting of F."""

    __slots__ = ("P0", "middles", "Pinf", "lam", "sigma", "blocks")

    def __init__(self, P0, middles, Pinf, lam, sigma, blocks):
        self.P0 = P0          # monic branch with initial y^s (None if s = 0)
        self.middles = middles  # list of BiPoly, lambda-monic middle blocks
        self.Pinf = Pinf      # branch with monomial initial part
        self.lam = lam
        self.sigma = sigma
        self.blocks = blocks  # list of (g_l, e_l) mirroring `middles`

    def all_factors(self):
        out = []
        if self.P0 is not None:
            out.append(self.P0)
        out.extend(self.middles)
        out.append(self.Pinf)
        return out

    @property
    def has_repeated_blocks(self):
        return any(e > 1 for _, e in self.blocks)


def partial_facto(F, lam, sigma, seed=0, allow_blocks=False):
    """Split F along slope lambda at relative lambda-precision sigma.

    Each returned branch P satisfies v_lambda(P - P*) > v_lambda(P*) + sigma
    against its exact analytic counterpart P*, and is lambda-truncated at
    v_lambda(P) + sigma.  Repeated blocks in the initial factorization raise
    DegenerateEdge unless allow_blocks is set.
    """
    lam = as_slope(lam)
    sigma = Fraction(sigma)
    if F.is_zero():
        raise ZeroPolynomial("partial factorization of 0")
    m, q = slope_mq(lam)
    p = F.field.p

    s, middles_init, unit_init = init_facto(F, lam, seed)
    if not allow_blocks and any(e > 1 for _, _, e in middles_init):
        raise DegenerateEdge("repeated irreducible block in the initial part")

    v = v_lambda(F, lam)
    c_int = v.numerator * (q // v.denominator)  # q*v as an integer
    assert Fraction(c_int, q) == v
    alpha = alpha_lambda(-c_int, lam)
    u_exp = (-c_int - alpha * m) // q
    Fp = F.mul_monomial(alpha, u_exp)
    Fh = tau_lambda(Fp, lam)
    assert Fh.v0() == 0

    n = floor(q * sigma) + 1

    f0 = Fh.at_x0()
    beta = 0
    while beta < len(f0) and f0[beta] == 0:
        beta += 1
    s_theta = beta // q
    inits = []
    if beta:
        inits.append([0] * beta + [1])
    block_meta = []
    for _, g_l, e_l in middles_init:
        h = [1]
        for _ in range(e_l):
            h = pmul(h, g_l, p)
        inits.append(pshift_scale(h, q))
        block_meta.append((g_l, e_l))
    c = unit_init.terms[next(iter(unit_init.terms))]
    facs = apl_hensel(Fh, inits + [[c]], lam, n)

    idx = 0
    P0 = None
    if beta:
        P0 = tau_lambda_inverse(facs[idx], lam).mul_monomial(-alpha, m * s_theta)
        idx += 1
    mids = []
    c_inf = -u_exp - m * s_theta
    for P_l, _, _ in middles_init:
        D = (facs[idx].deg_y()) // q
        mids.append(tau_lambda_inverse(facs[idx], lam).mul_monomial(0, m * D))
        c_inf -= m * D
        idx += 1
    Pinf = tau_lambda_inverse(facs[idx], lam).mul_monomial(0, c_inf)

    def out_trunc(P):
        return trunc_lambda(P, lam, v_lambda(P, lam) + sigma)

    P0 = out_trunc(P0) if P0 is not None else None
    mids = [out_trunc(P) for P in mids]
    Pinf = out_trunc(Pinf)
    return PartialFactorization(P0, mids, Pinf, lam, sigma, block_meta)

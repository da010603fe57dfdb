"""Sparse bivariate polynomials and slope-valuation (v_lambda) machinery.

Terms are stored as a dict keyed by (i, j) where i >= 0 is the y-exponent and
j (any integer; Laurent in x) is the x-exponent.  A slope lambda is a
fractions.Fraction m/q in lowest terms; all valuations are exact rationals
and the valuation of 0 is the float infinity sentinel, which orders above
every Fraction.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotInApl, SingleYStratum, ZeroPolynomial
from .ffield import Field, pnormalize

INF = float("inf")

Rat = Fraction


def as_slope(value):
    """Coerce ints / strings like '1/2' / Fractions to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("cannot interpret %r as a slope" % (value,))


def slope_mq(lam):
    """Numerator/denominator pair (m, q) with q >= 1 and gcd(m, q) = 1."""
    lam = as_slope(lam)
    return lam.numerator, lam.denominator


class BiPoly:
    """Immutable-by-convention sparse polynomial in K[x^{+-1}][y]."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        p = field.p
        clean = {}
        for (i, j), c in terms.items():
            c %= p
            if c:
                if i < 0:
                    raise ValueError("negative y-exponent %d" % i)
                clean[(i, j)] = c
        self.terms = clean

    # -------------------------------------------------------- constructors
    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one(cls, field):
        return cls(field, {(0, 0): 1})

    @classmethod
    def monomial(cls, field, i, j, c=1):
        return cls(field, {(i, j): c})

    @classmethod
    def from_univariate_in_y(cls, field, coeffs):
        return cls(field, {(i, 0): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_univariate_in_x(cls, field, coeffs):
        return cls(field, {(0, j): c for j, c in enumerate(coeffs)})

    # ----------------------------------------------------------- basic ops
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field.p, frozenset(self.terms.items())))

    def __add__(self, other):
        p = self.field.p
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = (out.get(key, 0) + c) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return BiPoly(self.field, out)

    def __sub__(self, other):
        p = self.field.p
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = (out.get(key, 0) - c) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return BiPoly(self.field, out)

    def __neg__(self):
        p = self.field.p
        return BiPoly(self.field, {k: p - c for k, c in self.terms.items()})

    def __mul__(self, other):
        p = self.field.p
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if len(a) * len(b) > 4096 and a and b:
            return _mul_packed(self.field, a, b)
        out = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(self.field, {k: v % p for k, v in out.items()})

    def scale(self, a):
        a %= self.field.p
        return BiPoly(self.field, {k: c * a for k, c in self.terms.items()})

    def mul_monomial(self, di, dj, c=1):
        p = self.field.p
        return BiPoly(
            self.field, {(i + di, j + dj): cc * c % p for (i, j), cc in self.terms.items()}
        )

    def pow(self, e):
        out = BiPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # ----------------------------------------------------------- structure
    def support(self):
        return list(self.terms.keys())

    def deg_y(self):
        if not self.terms:
            return -1
        return max(i for i, _ in self.terms)

    def ord_y(self):
        if not self.terms:
            raise ZeroPolynomial("ord_y of 0")
        return min(i for i, _ in self.terms)

    def deg_x(self):
        if not self.terms:
            return -1
        return max(j for _, j in self.terms)

    def v0(self):
        """Gauss valuation: min x-exponent over all terms (INF for 0)."""
        if not self.terms:
            return INF
        return min(j for _, j in self.terms)

    def coeff(self, i, j):
        return self.terms.get((i, j), 0)

    def y_coeff(self, i):
        """Coefficient of y^i as a dict j -> c."""
        return {j: c for (ii, j), c in self.terms.items() if ii == i}

    def y_coeff_list(self, i):
        """Coefficient of y^i as a dense list (requires x-exponents >= 0)."""
        d = self.y_coeff(i)
        if not d:
            return []
        if min(d) < 0:
            raise ValueError("Laurent coefficient cannot be densified")
        out = [0] * (max(d) + 1)
        for j, c in d.items():
            out[j] = c
        return pnormalize(out)

    def lc_y(self):
        """Leading y-coefficient as a dict j -> c."""
        return self.y_coeff(self.deg_y())

    def y_stratum(self, i):
        """The full stratum c_i(x) y^i as a BiPoly."""
        return BiPoly(self.field, {(ii, j): c for (ii, j), c in self.terms.items() if ii == i})

    def at_x0(self):
        """F(0, y) as a dense univariate list in y; requires v0 >= 0."""
        out = {}
        for (i, j), c in self.terms.items():
            if j < 0:
                raise ValueError("Laurent polynomial has no value at x = 0")
            if j == 0:
                out[i] = c
        if not out:
            return []
        lst = [0] * (max(out) + 1)
        for i, c in out.items():
            lst[i] = c
        return pnormalize(lst)

    def deriv_y(self):
        p = self.field.p
        return BiPoly(
            self.field,
            {(i - 1, j): i * c % p for (i, j), c in self.terms.items() if i > 0},
        )

    def deriv_x(self):
        p = self.field.p
        return BiPoly(
            self.field,
            {(i, j - 1): (j % p) * c % p for (i, j), c in self.terms.items() if j % p},
        )

    def eval_y(self, y0):
        """Substitute y = y0 in K; returns dict j -> c (poly in x)."""
        p = self.field.p
        out = {}
        for (i, j), c in self.terms.items():
            out[j] = (out.get(j, 0) + c * pow(y0, i, p)) % p
        return {j: c for j, c in out.items() if c}

    def trunc_x(self, n):
        """Drop terms with x-exponent >= n."""
        return BiPoly(self.field, {k: c for k, c in self.terms.items() if k[1] < n})

    def drop_negative_x(self):
        return BiPoly(self.field, {k: c for k, c in self.terms.items() if k[1] >= 0})

    def canonical_terms(self):
        """Sorted [(j, i, c)] triples: descending y, then descending x."""
        return [
            (j, i, self.terms[(i, j)])
            for (i, j) in sorted(self.terms, key=lambda k: (-k[0], -k[1]))
        ]

    def sort_key(self):
        return (self.deg_y(), sorted(self.terms.items()))

    def __repr__(self):
        return "BiPoly(p=%d, %s)" % (self.field.p, format_poly(self))


def _mul_packed(field, a, b):
    """Dense product via Kronecker substitution into one big integer.

    Exponents are shifted to be nonnegative, each bivariate operand is packed
    as an integer in base 2^bits with digit index i*width + j, and CPython's
    big-integer product does the convolution.
    """
    p = field.p
    ja = min(j for _, j in a)
    jb = min(j for _, j in b)
    wa = max(j for _, j in a) - ja
    wb = max(j for _, j in b) - jb
    width = wa + wb + 1
    da = max(i for i, _ in a)
    db = max(i for i, _ in b)
    bits = ((p - 1) * (p - 1) * min(len(a), len(b))).bit_length() + 1
    bits = (bits + 7) & ~7  # whole bytes, so digits can be sliced out
    step = bits // 8
    na = 0
    for (i, j), c in a.items():
        na |= c << (bits * (i * width + j - ja))
    nb = 0
    for (i, j), c in b.items():
        nb |= c << (bits * (i * width + j - jb))
    top = (da + db) * width + wa + wb
    data = (na * nb).to_bytes((top + 1) * step, "little")
    out = {}
    for pos in range(top + 1):
        c = int.from_bytes(data[pos * step : (pos + 1) * step], "little") % p
        if c:
            out[(pos // width, pos % width + ja + jb)] = c
    return BiPoly(field, out)


def format_poly(F):
    """Human-readable canonical form, e.g. '3*x^2*y + 4'."""
    if F.is_zero():
        return "0"
    parts = []
    for j, i, c in F.canonical_terms():
        atoms = []
        if c != 1 or (i == 0 and j == 0):
            atoms.append(str(c))
        if j == 1:
            atoms.append("x")
        elif j != 0:
            atoms.append("x^%d" % j)
        if i == 1:
            atoms.append("y")
        elif i != 0:
            atoms.append("y^%d" % i)
        parts.append("*".join(atoms))
    return " + ".join(parts)


# ------------------------------------------------------------- valuations


def v_lambda(F, lam):
    """Slope valuation min(j + i*lambda) over the support; INF for 0."""
    if F.is_zero():
        return INF
    m, q = slope_mq(lam)
    best = min(j * q + i * m for i, j in F.terms)
    return Fraction(best, q)


def d_lambda(F, lam):
    """Slope degree max(j + i*lambda) over the support; -INF for 0."""
    if F.is_zero():
        return -INF
    m, q = slope_mq(lam)
    best = max(j * q + i * m for i, j in F.terms)
    return Fraction(best, q)


def trunc_lambda(F, lam, sigma):
    """Keep terms with j + i*lambda <= sigma (inclusive)."""
    m, q = slope_mq(lam)
    sigma = Fraction(sigma)
    sn, sd = sigma.numerator, sigma.denominator
    return BiPoly(
        F.field,
        {(i, j): c for (i, j), c in F.terms.items() if (j * q + i * m) * sd <= sn * q},
    )


def in_lambda(F, lam):
    """lambda-initial part: terms with j + i*lambda = v_lambda(F)."""
    if F.is_zero():
        return F
    m, q = slope_mq(lam)
    best = min(j * q + i * m for i, j in F.terms)
    return BiPoly(
        F.field,
        {(i, j): c for (i, j), c in F.terms.items() if j * q + i * m == best},
    )


def lambda_parts(F, lam):
    """Defects (a_lambda, b_lambda, m_lambda) of F along lambda."""
    if F.is_zero():
        raise ZeroPolynomial("defects of 0")
    v = v_lambda(F, lam)
    s = F.ord_y()
    n = F.deg_y()
    a = v_lambda(F.y_stratum(s), lam) - v
    b = v_lambda(F.y_stratum(n), lam) - v
    return a, b, max(a, b)


def is_lambda_monic(F, lam):
    a, b, _ = lambda_parts(F, lam)
    return b == 0


def average_slope(F):
    """lambda_F = -(v_0(p_n) - v_0(p_s)) / (n - s) for the extreme y-strata."""
    if F.is_zero():
        raise ZeroPolynomial("average slope of 0")
    s = F.ord_y()
    n = F.deg_y()
    if n == s:
        raise SingleYStratum("polynomial has a single y-stratum")
    vs = min(j for i, j in F.terms if i == s)
    vn = min(j for i, j in F.terms if i == n)
    return Fraction(-(vn - vs), n - s)


def sigma_prime(lam, lam2, sigma, F):
    """Precision carried from slope lam to slope lam2 (eq. for sigma')."""
    lam = as_slope(lam)
    lam2 = as_slope(lam2)
    sigma = Fraction(sigma)
    n = F.deg_y()
    base = sigma + v_lambda(F, lam) - v_lambda(F, lam2)
    if lam2 >= lam:
        return base + n * (lam2 - lam)
    return base


# --------------------------------------------------------------- tau maps


def tau_lambda(F, lam):
    """Newton-Puiseux substitution F(x, y) -> F(x^q, x^m y); (i,j) -> (i, qj+mi)."""
    m, q = slope_mq(lam)
    return BiPoly(F.field, {(i, q * j + m * i): c for (i, j), c in F.terms.items()})


def tau_lambda_inverse(F, lam):
    """Inverse exponent map (i, j) -> (i, (j - m i)/q); raises if not in A_lambda."""
    m, q = slope_mq(lam)
    out = {}
    for (i, j), c in F.terms.items():
        num = j - m * i
        if num % q:
            raise NotInApl("term (i=%d, j=%d) not in the image of tau_lambda" % (i, j))
        out[(i, num // q)] = c
    return BiPoly(F.field, out)


def alpha_lambda(k, lam):
    """The unique alpha in [0, q) with alpha = k * m^{-1} mod q."""
    m, q = slope_mq(lam)
    if q == 1:
        return 0
    return (k * pow(m, -1, q)) % q


def is_in_Apl(F, lam):
    """Strict membership in A_lambda: every term satisfies i mod q = alpha_lambda(j)."""
    m, q = slope_mq(lam)
    if q == 1:
        return True
    minv = pow(m, -1, q)
    return all(i % q == (j * minv) % q for (i, j) in F.terms)


def is_in_Apl_translated(F, lam):
    """Membership in the monoid of monomial translates of A_lambda."""
    m, q = slope_mq(lam)
    if q == 1 or F.is_zero():
        return True
    it = iter(F.terms)
    i0, j0 = next(it)
    return all((m * (i - i0) - (j - j0)) % q == 0 for (i, j) in it)


def reciprocal(F):
    """F~ = y^d F(x, 1/y) with d = deg_y(F)."""
    if F.is_zero():
        return F
    d = F.deg_y()
    return BiPoly(F.field, {(d - i, j): c for (i, j), c in F.terms.items()})

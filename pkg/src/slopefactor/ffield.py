"""Prime field arithmetic and univariate polynomial algebra over F_p.

Polynomials are plain lists of ints in [0, p), little-endian (index = degree),
normalized so the last entry is nonzero.  The zero polynomial is [].
"""
from __future__ import annotations

import random

from .errors import ModulusNotPrime, NotAUnit, NotCoprime

MAX_MODULUS = 1 << 62

# deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The prime field F_p, p < 2^62."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise ModulusNotPrime("modulus %r is not prime" % (p,))
        if p >= MAX_MODULUS:
            raise ModulusNotPrime("modulus %d exceeds 2^62" % p)
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%d)" % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return pow(a, -1, self.p)

    def neg(self, a):
        return -a % self.p


# ---------------------------------------------------------------- raw polys


def pnormalize(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def pdeg(f):
    return len(f) - 1


def padd(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return pnormalize(out)


def psub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return pnormalize(out)


def pneg(f, p):
    return [(-c) % p for c in f]


def pscale(f, a, p):
    a %= p
    if a == 0:
        return []
    return [c * a % p for c in f]


def _schoolbook_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return pnormalize([c % p for c in out])


def _kronecker_mul(f, g, p):
    # pack into one big integer each; CPython's big-int multiply does the rest
    nbits = ((p - 1) * (p - 1) * min(len(f), len(g))).bit_length() + 1
    mask = (1 << nbits) - 1
    fa = 0
    for c in reversed(f):
        fa = (fa << nbits) | c
    ga = 0
    for c in reversed(g):
        ga = (ga << nbits) | c
    prod = fa * ga
    out = []
    for _ in range(len(f) + len(g) - 1):
        out.append((prod & mask) % p)
        prod >>= nbits
    return pnormalize(out)


def pmul(f, g, p):
    if not f or not g:
        return []
    if min(len(f), len(g)) < 32:
        return _schoolbook_mul(f, g, p)
    return _kronecker_mul(f, g, p)


def pdivmod(f, g, p):
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    f = list(f)
    dg = pdeg(g)
    df = pdeg(f)
    if df < dg:
        return [], pnormalize(f)
    inv_lc = pow(g[-1], -1, p)
    q = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = f[dg + k] % p
        if c:
            c = c * inv_lc % p
            q[k] = c
            for i, b in enumerate(g):
                if b:
                    f[i + k] = (f[i + k] - c * b) % p
    return pnormalize(q), pnormalize(f[:dg])


def pmod(f, g, p):
    return pdivmod(f, g, p)[1]


def pmonic(f, p):
    if not f:
        return []
    if f[-1] == 1:
        return list(f)
    return pscale(f, pow(f[-1], -1, p), p)


def uni_gcd(f, g, p):
    """Monic gcd of two univariate polynomials over F_p."""
    a, b = list(f), list(g)
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def pxgcd(f, g, p):
    """Extended gcd: returns (d, s, t) monic d with s*f + t*g = d."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    c = pow(r0[-1], -1, p)
    return pscale(r0, c, p), pscale(s0, c, p), pscale(t0, c, p)


def ppowmod(f, e, mod, p):
    out = [1]
    f = pmod(f, mod, p)
    while e:
        if e & 1:
            out = pmod(pmul(out, f, p), mod, p)
        f = pmod(pmul(f, f, p), mod, p)
        e >>= 1
    return out


def pderiv(f, p):
    return pnormalize([i * c % p for i, c in enumerate(f)][1:])


def peval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def pshift_scale(f, scale_exp):
    """Multiply exponents by scale_exp: f(t) -> f(t^scale_exp) as coeff list."""
    if not f:
        return []
    out = [0] * ((len(f) - 1) * scale_exp + 1)
    for i, c in enumerate(f):
        out[i * scale_exp] = c
    return out


def series_inv(u, n, p):
    """Inverse of a unit power series u mod x^n, by Newton iteration."""
    if not u or u[0] == 0:
        raise NotAUnit("series has zero constant term")
    v = [pow(u[0], -1, p)]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        t = pmul(v, u[:prec], p)[:prec]
        # v <- v*(2 - u v) mod x^prec
        two_minus = [(-c) % p for c in t]
        if two_minus:
            two_minus[0] = (two_minus[0] + 2) % p
        else:
            two_minus = [2 % p]
        v = pmul(v, two_minus, p)[:prec]
    pnormalize(v)
    return v


# ------------------------------------------------------------- factorization


def _squarefree_decomposition(f, p):
    """Return list of (g, multiplicity) with f = lc * prod g^m, g monic squarefree."""
    out = []
    lc = f[-1]
    f = pmonic(f, p)

    def rec(f, mult):
        if pdeg(f) < 1:
            return
        df = pderiv(f, p)
        if not df:
            # f = g(t^p); over F_p the p-th root keeps the same coefficients
            g = f[::p]
            rec(pnormalize(g), mult * p)
            return
        c = uni_gcd(f, df, p)
        w = pdivmod(f, c, p)[0]
        i = 1
        while pdeg(w) > 0:
            y = uni_gcd(w, c, p)
            z = pdivmod(w, y, p)[0]
            if pdeg(z) > 0:
                out.append((z, mult * i))
            w = y
            c = pdivmod(c, y, p)[0]
            i += 1
        if pdeg(c) > 0:
            rec(c, mult)

    rec(f, 1)
    return lc, out


def _distinct_degree(f, p):
    """Distinct-degree decomposition of monic squarefree f; list of (product, d)."""
    out = []
    h = [0, 1]  # t
    x = [0, 1]
    d = 0
    while pdeg(f) > 0:
        d += 1
        if 2 * d > pdeg(f):
            out.append((f, pdeg(f)))
            break
        h = ppowmod(h, p, f, p)
        g = uni_gcd(psub(h, x, p), f, p)
        if pdeg(g) > 0:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    return out


def _equal_degree_split(f, d, p, rng):
    """Split monic squarefree f, all of whose factors have degree d."""
    n = pdeg(f)
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        pnormalize(a)
        if pdeg(a) < 1:
            continue
        if p == 2:
            # trace map over F_{2^d}
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                t = pmod(pmul(t, t, p), f, p)
                acc = padd(acc, t, p)
            g = uni_gcd(acc, f, p)
        else:
            e = (p ** d - 1) // 2
            b = ppowmod(a, e, f, p)
            g = uni_gcd(psub(b, [1], p), f, p)
        if 0 < pdeg(g) < n:
            left = _equal_degree_split(g, d, p, rng)
            right = _equal_degree_split(pdivmod(f, g, p)[0], d, p, rng)
            return left + right


def uni_factor(f, p, seed=0):
    """Factor f over F_p.  Returns (lc, [(monic irreducible, multiplicity), ...]).

    Cantor-Zassenhaus: squarefree decomposition, then distinct-degree,
    then randomized equal-degree splitting driven by the given seed.
    """
    if not f:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    lc, sqf = _squarefree_decomposition(f, p)
    factors = []
    for g, mult in sqf:
        for part, d in _distinct_degree(g, p):
            for irr in _equal_degree_split(part, d, p, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (pdeg(fm[0]), fm[0][::-1]))
    return lc, factors


def is_irreducible(f, p):
    """Rabin irreducibility test (deterministic)."""
    n = pdeg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = pmonic(f, p)
    x = [0, 1]
    h = ppowmod(x, p ** n, f, p)
    if psub(h, x, p):
        return False
    # for each prime divisor q of n check gcd(t^{p^{n/q}} - t, f) = 1
    m = n
    primes = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for q in primes:
        h = ppowmod(x, p ** (n // q), f, p)
        if pdeg(uni_gcd(psub(h, x, p), f, p)) != 0:
            return False
    return True


def _monic_polys_of_degree(d, p):
    """Yield monic polys of degree d over F_p in lexicographic coefficient order."""
    # coefficients (c_0, ..., c_{d-1}) counted like base-p integers
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        yield coeffs + [1]


def uni_find_coprime_irreducible(c0, p):
    """Smallest monic irreducible a0 with gcd(a0, c0) = 1.

    Degree 1 is searched first (smallest root wins); for higher degrees monic
    polynomials are enumerated in lexicographic coefficient order.
    """
    if not c0:
        raise ZeroDivisionError("c0 must be nonzero")
    # degree 1: a0 = t - z with c0(z) != 0; at most deg(c0) roots exist
    for z in range(min(p, pdeg(c0) + 1)):
        if peval(c0, z, p) != 0:
            return [(-z) % p, 1]
    d = 2
    while True:
        for cand in _monic_polys_of_degree(d, p):
            if is_irreducible(cand, p) and pdeg(uni_gcd(cand, c0, p)) == 0:
                return cand
        d += 1


def check_coprime(polys, p):
    """Raise NotCoprime unless the given polynomials are pairwise coprime."""
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if pdeg(uni_gcd(polys[i], polys[j], p)) != 0:
                raise NotCoprime("polynomials %d and %d share a factor" % (i, j))

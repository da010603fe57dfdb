"""Independent oracles and generators shared by the test suite.

Everything here is implemented from scratch on plain dicts/lists so the
package under test is never used to verify itself.
"""

import random
from fractions import Fraction

# ---------------------------------------------------------------- dict polys
# a bivariate polynomial is {(i, j): c} with i the y-exponent, j the
# x-exponent and c a nonzero residue mod p


def oclean(t, p):
    return {k: c % p for k, c in t.items() if c % p}


def oadd(a, b, p):
    out = dict(a)
    for k, c in b.items():
        out[k] = (out.get(k, 0) + c) % p
    return {k: c for k, c in out.items() if c}


def oneg(a, p):
    return {k: (-c) % p for k, c in a.items()}


def osub(a, b, p):
    return oadd(a, oneg(b, p), p)


def omul(a, b, p):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = (out.get(k, 0) + c1 * c2) % p
    return {k: c for k, c in out.items() if c}


def oscale(a, c, p):
    return {k: v * c % p for k, v in a.items() if v * c % p}


def odeg_y(a):
    return max(i for i, _ in a) if a else -1


def oy_coeff(a, i):
    """y^i coefficient as a univariate list in x."""
    js = [j for (ii, j), _ in [(k, v) for k, v in a.items()] if ii == i]
    if not js:
        return []
    out = [0] * (max(js) + 1)
    for (ii, j), c in a.items():
        if ii == i:
            out[j] = c
    while out and out[-1] == 0:
        out.pop()
    return out


# ------------------------------------------------------------ univariate ops


def udeg(f):
    return len(f) - 1 if f else -1


def utrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def umul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return utrim(out)


def usub(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = (out[i] - b) % p
    return utrim(out)


def udivmod(f, g, p):
    f = utrim(f)
    g = utrim(g)
    assert g
    inv = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and utrim(r):
        r = utrim(r)
        if len(r) < len(g):
            break
        c = r[-1] * inv % p
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % p
    return utrim(q), utrim(r)


def udivides(g, f, p):
    """g | f for univariate lists over F_p."""
    if not utrim(f):
        return True
    if not utrim(g):
        return False
    _, r = udivmod(f, g, p)
    return not r


def ugcd(f, g, p):
    f, g = utrim(f), utrim(g)
    while g:
        _, r = udivmod(f, g, p)
        f, g = g, r
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def monic_divisors(f, p):
    """All monic divisors of a small univariate polynomial, brute force."""
    f = utrim(f)
    out = [[1]]
    if not f:
        return out
    d = len(f) - 1
    for deg in range(1, d + 1):
        for code in range(p**deg):
            g = []
            c = code
            for _ in range(deg):
                g.append(c % p)
                c //= p
            g.append(1)
            if udivides(g, f, p):
                out.append(g)
    return out


# ----------------------------------------------------- bivariate divisibility


def oy_rows(a):
    """List of univariate x-polys indexed by y-exponent, trimmed at the top."""
    d = odeg_y(a)
    return [oy_coeff(a, i) for i in range(d + 1)]


def oprem(A, B, p):
    """Pseudo-remainder of A by B with respect to y, rows over F_p[x]."""
    ra = [list(r) for r in oy_rows(A)]
    rb = [list(r) for r in oy_rows(B)]
    while ra and not utrim(ra[-1]):
        ra.pop()
    while rb and not utrim(rb[-1]):
        rb.pop()
    assert rb, "division by zero"
    e = len(rb) - 1
    lb = rb[-1]
    while len(ra) - 1 >= e and any(utrim(r) for r in ra):
        while ra and not utrim(ra[-1]):
            ra.pop()
        if len(ra) - 1 < e:
            break
        la = ra[-1]
        k = len(ra) - 1 - e
        ra = [umul(r, lb, p) for r in ra]
        for i in range(e + 1):
            ra[k + i] = usub(ra[k + i], umul(la, rb[i], p), p)
    return ra


def odivides(B, A, p):
    """B | A in F_p[x,y], for B primitive in F_p[x] (Gauss's lemma)."""
    if not A:
        return True
    if odeg_y(B) == 0:
        g = oy_coeff(B, 0)
        return all(udivides(g, r, p) for r in oy_rows(A))
    rem = oprem(A, B, p)
    return all(not utrim(r) for r in rem)


def ocontent_x(a, p):
    """gcd in F_p[x] of the y-coefficients."""
    g = []
    for r in oy_rows(a):
        if utrim(r):
            g = ugcd(g, r, p)
    return g


def is_irreducible_oracle(a, p):
    """Exhaustive irreducibility test for deg_y <= 3 bivariate polys.

    Valid because any proper factorization of a primitive polynomial of
    y-degree <= 3 with both parts of positive y-degree contains a part of
    y-degree exactly 1, whose leading/trailing y-coefficients divide those
    of the input (rational-root argument over F_p[x]).
    """
    a = oclean(a, p)
    dy = odeg_y(a)
    if dy <= 0:
        # pure K[x] polynomial: irreducible iff degree-1 in x (or never
        # reached: callers only pass positive y-degree factors)
        return udeg(oy_coeff(a, 0)) == 1
    cont = ocontent_x(a, p)
    if udeg(cont) > 0:
        return False
    rows = oy_rows(a)
    if not utrim(rows[0]):
        # y | a, so a is irreducible only if it is c*y itself
        return dy == 1 and len(a) == 1 and (1, 0) in a
    if dy == 1:
        return True
    lc = rows[-1]
    tc = rows[0]
    for da in monic_divisors(lc, p):
        for db in monic_divisors(tc, p):
            for c in range(1, p):
                cand = {}
                for j, v in enumerate(da):
                    if v:
                        cand[(1, j)] = v
                for j, v in enumerate(db):
                    if v * c % p:
                        cand[(0, j)] = v * c % p
                if odivides(cand, a, p):
                    return False
    return True


# ----------------------------------------------------------- geometry oracle


def convex_hull(points):
    """Monotone-chain hull, exact (Fraction-safe), counter-clockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper = []
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def shoelace_area(points):
    hull = convex_hull(points)
    if len(hull) < 3:
        return Fraction(0)
    acc = 0
    for t in range(len(hull)):
        x1, y1 = hull[t]
        x2, y2 = hull[(t + 1) % len(hull)]
        acc += x1 * y2 - x2 * y1
    return Fraction(abs(acc), 2)


# -------------------------------------------------------------- generators


def random_sparse_factor(rng, p, dy, dx, nterms=(3, 6)):
    """Random sparse polynomial with both a y^0 term and a y^dy term."""
    while True:
        t = {}
        for _ in range(rng.randrange(*nterms)):
            t[(rng.randrange(0, dy + 1), rng.randrange(0, dx + 1))] = rng.randrange(1, p)
        t[(dy, rng.randrange(0, dx + 1))] = rng.randrange(1, p)
        t[(0, rng.randrange(0, dx + 1))] = rng.randrange(1, p)
        if odeg_y(t) == dy:
            return t

import random
from fractions import Fraction

import pytest

from slopefactor import (
    BiPoly,
    Field,
    apl_div_trunc,
    apl_hensel,
    apl_mul_trunc,
    lambda_div_trunc,
    lambda_mul_trunc,
    partial_facto,
    trunc_lambda,
    v_lambda,
)
from slopefactor.aplarith import apl_invert_unit, init_facto
from slopefactor.errors import BadLeadingValuation, InitMismatch, NotInApl
from slopefactor.ffield import pmul, pshift_scale
from slopefactor.slopecore import is_in_Apl, slope_mq


F101 = Field(101)


def rand_apl(rng, field, lam, dy, jmax=3, force_lead=False):
    """Random element of A_lambda^+ with y-degree dy."""
    m, q = slope_mq(lam)
    t = {}
    for _ in range(rng.randrange(2, 7)):
        i = rng.randrange(dy + 1)
        lo = -((-m * (dy - i)) // q) if force_lead else 0
        t[(i, q * (lo + rng.randrange(jmax)) + m * i)] = rng.randrange(1, field.p)
    lead_j = m * dy
    t[(dy, lead_j)] = rng.randrange(1, field.p)
    if force_lead:
        # keep the Gauss valuation on the leading y-coefficient
        t = {k: c for k, c in t.items() if k == (dy, lead_j) or k[1] >= lead_j}
        if len(t) == 1:
            t[(0, q * ((m * dy) // q + 1))] = 1
    return BiPoly(field, t)


def test_apl_division_contract():
    rng = random.Random(30)
    for lam in (Fraction(0), Fraction(2), Fraction(1, 2), Fraction(3, 2)):
        for _ in range(60):
            G = rand_apl(rng, F101, lam, rng.randrange(1, 4), force_lead=True)
            F = rand_apl(rng, F101, lam, rng.randrange(1, 7))
            n = rng.randrange(1, 8)
            Q, R = apl_div_trunc(F, G, lam, n)
            assert is_in_Apl(Q, lam) and is_in_Apl(R, lam)
            assert R.is_zero() or R.deg_y() < G.deg_y()
            resid = F - (Q * G + R)
            assert resid.is_zero() or resid.v0() >= F.v0() + n


def test_apl_division_rejects_bad_leading_valuation():
    lam = Fraction(1)
    # leading y-coefficient has larger valuation than the constant term
    G = BiPoly(F101, {(1, 2): 1, (0, 0): 1})
    F = BiPoly(F101, {(2, 2): 1})
    with pytest.raises(BadLeadingValuation):
        apl_div_trunc(F, G, lam, 3)


def test_apl_multiplication_truncates_the_exact_product():
    rng = random.Random(31)
    for lam in (Fraction(1), Fraction(1, 2)):
        for _ in range(30):
            G = rand_apl(rng, F101, lam, 2)
            H = rand_apl(rng, F101, lam, 3)
            n = rng.randrange(1, 7)
            P = apl_mul_trunc(G, H, lam, n)
            assert is_in_Apl(P, lam)
            diff = P - G * H
            assert diff.is_zero() or diff.v0() >= (G * H).v0() + n


def test_apl_unit_inverse():
    rng = random.Random(32)
    lam = Fraction(1, 2)
    for _ in range(20):
        u = rand_apl(rng, F101, lam, 0)
        if u.v0() != 0:
            u = u + BiPoly(F101, {(0, 0): 1})
        n = rng.randrange(1, 8)
        v = apl_invert_unit(u, lam, n)
        prod = u * v
        one = BiPoly(F101, {(0, 0): prod.coeff(0, 0)})
        assert prod.coeff(0, 0) != 0
        diff = prod - one.scale(F101.inv(prod.coeff(0, 0))).scale(prod.coeff(0, 0))
        # all other terms must sit above precision n
        rest = BiPoly(F101, {k: c for k, c in prod.terms.items() if k != (0, 0)})
        assert rest.is_zero() or rest.v0() >= n


def test_hensel_lifting_reconstructs_the_input():
    rng = random.Random(33)
    for lam in (Fraction(0), Fraction(1, 2), Fraction(2, 3)):
        m, q = slope_mq(lam)
        for _ in range(40):
            p = F101.p
            roots = rng.sample(range(1, 20), rng.randrange(2, 4))
            inits = [pshift_scale([a, 1], q) for a in roots]
            c = rng.randrange(1, p)
            base = [c]
            for w in inits:
                base = pmul(base, w, p)
            t = {(i, 0): cc for i, cc in enumerate(base) if cc}
            D = len(base) - 1
            # x-adic perturbation honoring the A_lambda support constraint
            for _ in range(rng.randrange(1, 5)):
                i = rng.randrange(D + 2)
                j = (m * i) % q + q * rng.randrange(0, 3)
                if j == 0:
                    j = q
                t[(i, j)] = rng.randrange(1, p)
            F = BiPoly(F101, t)
            n = rng.randrange(2, 8)
            parts = apl_hensel(F, inits + [[c]], lam, n)
            assert len(parts) == len(inits) + 1
            prod = BiPoly.one(F101)
            for part in parts:
                assert is_in_Apl(part, lam)
                prod = prod * part
            diff = (prod - F).trunc_x(n)
            assert diff.is_zero()


def test_hensel_rejects_mismatched_initial_factorization():
    lam = Fraction(0)
    F = BiPoly(F101, {(2, 0): 1, (0, 0): 1, (1, 1): 1})
    with pytest.raises(InitMismatch):
        apl_hensel(F, [[3, 1], [2]], lam, 4)


def test_lambda_side_wrappers_respect_relative_precision():
    rng = random.Random(34)
    lam = Fraction(1, 2)
    for _ in range(20):
        G = rand_apl(rng, F101, lam, 2)
        H = rand_apl(rng, F101, lam, 2, force_lead=True)
        sigma = Fraction(rng.randrange(1, 7), 2)
        P = lambda_mul_trunc(G, H, lam, sigma)
        exact = G * H
        diff = P - exact
        assert diff.is_zero() or v_lambda(diff, lam) > v_lambda(exact, lam) + sigma - Fraction(1, 2)


def test_partial_facto_splits_along_the_initial_part():
    # F = (y - x)(y - 2x)(y - 3x) + higher order: initial part separable
    x, y = BiPoly(F101, {(0, 1): 1}), BiPoly(F101, {(1, 0): 1})
    F = (y - x) * (y - x.scale(2)) * (y - x.scale(3)) + BiPoly(F101, {(0, 5): 7})
    res = partial_facto(F, 1, 4)
    facs = res.all_factors()
    assert len(facs) >= 2
    prod = BiPoly.one(F101)
    for G in facs:
        prod = prod * G
    diff = prod - F
    assert diff.is_zero() or v_lambda(diff, 1) > v_lambda(F, 1) + 4 - Fraction(0)


def test_init_facto_orders_unit_branch_last():
    x, y = BiPoly(F101, {(0, 1): 1}), BiPoly(F101, {(1, 0): 1})
    F = (y - x) * (y - x.scale(2)) + BiPoly(F101, {(0, 4): 1})
    s, middles, unit = init_facto(F, 1)
    assert isinstance(middles, list)

import random
from fractions import Fraction

import pytest

from slopefactor import (
    BiPoly,
    Field,
    average_slope,
    d_lambda,
    format_poly,
    in_lambda,
    lambda_parts,
    reciprocal,
    tau_lambda,
    trunc_lambda,
    v_lambda,
)
from slopefactor.slopecore import (
    as_slope,
    is_in_Apl,
    is_lambda_monic,
    sigma_prime,
    slope_mq,
    tau_lambda_inverse,
    _mul_packed,
)

import helpers


F101 = Field(101)


def rand_bipoly(rng, field, dy=6, dx=6, nterms=8):
    t = {}
    for _ in range(nterms):
        t[(rng.randrange(dy + 1), rng.randrange(dx + 1))] = rng.randrange(1, field.p)
    return BiPoly(field, t), t


def test_ring_operations_match_dict_oracle():
    rng = random.Random(10)
    for field in (Field(2), F101):
        p = field.p
        for _ in range(40):
            A, ta = rand_bipoly(rng, field)
            B, tb = rand_bipoly(rng, field)
            assert dict((A + B).terms) == helpers.oadd(ta, tb, p)
            assert dict((A - B).terms) == helpers.osub(ta, tb, p)
            assert dict((A * B).terms) == helpers.omul(ta, tb, p)
            assert dict((-A).terms) == helpers.oneg(ta, p)
            assert dict(A.pow(3).terms) == helpers.omul(helpers.omul(ta, ta, p), ta, p)
            assert dict(A.scale(7).terms) == helpers.oscale(ta, 7, p)


def test_packed_multiplication_matches_oracle():
    rng = random.Random(11)
    field = Field(65537)
    p = field.p
    ta = {(i, j): rng.randrange(1, p) for i in range(12) for j in range(12)}
    tb = {(i, j): rng.randrange(1, p) for i in range(10) for j in range(14)}
    A, B = BiPoly(field, ta), BiPoly(field, tb)
    assert dict(_mul_packed(field, ta, tb).terms) == helpers.omul(ta, tb, p)
    assert dict((A * B).terms) == helpers.omul(ta, tb, p)


def test_degree_and_coefficient_accessors():
    F = BiPoly(F101, {(0, 2): 5, (3, 0): 1, (3, 4): 7, (1, 1): 2})
    assert F.deg_y() == 3 and F.ord_y() == 0 and F.deg_x() == 4 and F.v0() == 0
    assert F.coeff(3, 4) == 7 and F.coeff(2, 2) == 0
    assert F.y_coeff_list(3) == [1, 0, 0, 0, 7]
    assert F.lc_y() == {0: 1, 4: 7}
    assert F.eval_y(0) == {2: 5}
    assert F.at_x0() == [0, 0, 0, 1]
    assert F.deriv_y().coeff(2, 4) == 21
    assert F.deriv_x().coeff(3, 3) == 28


def test_slope_valuation_and_degree_oracle():
    rng = random.Random(12)
    for _ in range(50):
        F, t = rand_bipoly(rng, F101)
        for lam in (Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-2, 3)):
            vals = [j + i * lam for (i, j) in t]
            assert v_lambda(F, lam) == min(vals)
            assert d_lambda(F, lam) == max(vals)


def test_truncation_keeps_exactly_the_low_slope_terms():
    rng = random.Random(13)
    for _ in range(30):
        F, t = rand_bipoly(rng, F101)
        lam = Fraction(rng.randrange(0, 5), rng.randrange(1, 4))
        bound = v_lambda(F, lam) + Fraction(rng.randrange(0, 9), 2)
        T = trunc_lambda(F, lam, bound)
        assert all(j + i * lam <= bound for (i, j) in T.terms)
        assert all(j + i * lam > bound for (i, j) in (F - T).terms)


def test_initial_part_and_straightness_defect():
    # F = y^2 + x*y + x^3: lower edges of slopes 1 and 2
    F = BiPoly(F101, {(2, 0): 1, (1, 1): 1, (0, 3): 1})
    lam = average_slope(F)
    assert lam == Fraction(3, 2)
    a, b, m = lambda_parts(F, lam)
    # the average slope equalizes the two endpoint defects
    assert a == b == m == Fraction(1, 2)
    init = in_lambda(F, lam)
    assert dict(init.terms) == {(1, 1): 1}
    # along an actual edge slope the initial part is the edge polynomial
    edge_init = in_lambda(F, 1)
    assert dict(edge_init.terms) == {(2, 0): 1, (1, 1): 1}
    # the leading y-term realizes v_lambda only for slopes <= 1 here
    assert is_lambda_monic(F, 1) and not is_lambda_monic(F, 2)


def test_average_slope_of_straight_polygon_is_edge_slope():
    F = BiPoly(F101, {(2, 0): 1, (0, 2): 3, (1, 1): 5})
    assert average_slope(F) == 1
    _, _, m = lambda_parts(F, 1)
    assert m == 0


def test_newton_puiseux_substitution_roundtrip():
    rng = random.Random(14)
    for lam in (Fraction(1, 2), Fraction(3, 2), Fraction(2, 3), Fraction(2)):
        m, q = slope_mq(lam)
        assert Fraction(m, q) == lam and (q == 1 or m % q != 0)
        for _ in range(10):
            F, _ = rand_bipoly(rng, F101)
            T = tau_lambda(F, lam)
            assert is_in_Apl(T, lam)
            assert tau_lambda_inverse(T, lam) == F
            # the substitution turns slope valuation into Gauss valuation
            assert T.v0() == q * v_lambda(F, lam)
            assert T.deg_x() == q * d_lambda(F, lam)


def test_reciprocal_is_an_involution_on_y_units():
    rng = random.Random(15)
    for _ in range(20):
        F, t = rand_bipoly(rng, F101)
        if F.ord_y() != 0:
            t[(0, 0)] = 1
            F = BiPoly(F101, t)
        assert reciprocal(reciprocal(F)) == F
        assert reciprocal(F).deg_y() == F.deg_y()


def test_relative_precision_transport_formula():
    F = BiPoly(F101, {(2, 0): 1, (1, 1): 1, (0, 3): 1})
    lam, lam2, sigma = Fraction(3, 2), Fraction(1), Fraction(2)
    s = sigma_prime(lam, lam2, sigma, F)
    assert s == sigma + v_lambda(F, lam) - v_lambda(F, lam2)
    lam3 = Fraction(2)
    s3 = sigma_prime(lam, lam3, sigma, F)
    base = sigma + v_lambda(F, lam) - v_lambda(F, lam3)
    assert s3 == base + F.deg_y() * (lam3 - lam)


def test_as_slope_accepts_rationals_and_strings():
    assert as_slope("3/2") == Fraction(3, 2)
    assert as_slope(2) == Fraction(2)
    assert as_slope(Fraction(1, 3)) == Fraction(1, 3)


def test_format_poly_roundtrips_through_the_cli_parser():
    from slopefactor.cli import parse_expression

    rng = random.Random(16)
    for _ in range(20):
        F, _ = rand_bipoly(rng, F101)
        assert parse_expression(format_poly(F), F101) == F

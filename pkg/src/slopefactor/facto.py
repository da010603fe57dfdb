"""Recursive slope-valuation factorization in K((x))[y] (divide and conquer).

facto(F, lam, sigma) approximates the analytic factorization of F: middle
blocks of each partial splitting are irreducible and returned as factors, the
outer monic branch (initial part y^s) and the non-monic branch (monomial
initial part) are recursed on with their own average slopes and transported
precisions.  Degree-0 leftovers are collected into a unit.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DegenerateEdge, DegenerateInput, PrecisionTooLow, ZeroPolynomial
from .polygon import lower_volume, newton_polygon
from .slopecore import (
    BiPoly,
    as_slope,
    average_slope,
    lambda_parts,
    sigma_prime,
    v_lambda,
)
from .aplarith import partial_facto


class TraceNode:
    """One partial_facto invocation in the recursion tree."""

    __slots__ = (
        "lam",
        "sigma",
        "volume",
        "m_lam",
        "deg_y",
        "width",
        "lambda_is_average",
        "children",
        "kind",
    )

    def __init__(self, lam, sigma, vol, m_lam, deg_y, width, lambda_is_average, kind):
        self.lam = lam
        self.sigma = sigma
        self.volume = vol
        self.m_lam = m_lam
        self.deg_y = deg_y
        self.width = width
        self.lambda_is_average = lambda_is_average
        self.children = []
        self.kind = kind  # 'root', 'G' or 'H'

    def depth(self):
        """Longest chain of nodes with volume >= 1 (the halving measure)."""
        best = 0
        for ch in self.children:
            best = max(best, ch.depth())
        return best + (1 if self.volume >= 1 else 0)

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()


class AnalyticFactorization:
    __slots__ = ("factors", "unit", "lam", "sigma", "trace")

    def __init__(self, factors, unit, lam, sigma, trace):
        self.factors = factors
        self.unit = unit
        self.lam = lam
        self.sigma = sigma
        self.trace = trace

    def product(self):
        out = self.unit
        for f in self.factors:
            out = out * f
        return out


def facto(F, lam, sigma, seed=0):
    """Approximate analytic factorization of F along slope lam.

    Requires sigma >= m_lambda(F); every returned factor P approximates an
    irreducible analytic factor P* of F with v_lambda(P - P*) >
    v_lambda(P*) + sigma - m_lambda(F).
    """
    lam = as_slope(lam)
    sigma = Fraction(sigma)
    if F.is_zero():
        raise ZeroPolynomial("facto of 0")
    _, _, m_l = lambda_parts(F, lam)
    if sigma < m_l:
        raise PrecisionTooLow(
            "sigma = %s below the defect m_lambda(F) = %s" % (sigma, m_l)
        )
    return _facto(F, lam, sigma, seed, "root")


def _facto(F, lam, sigma, seed, kind):
    field = F.field
    one = BiPoly.one(field)
    d = F.deg_y()
    s = F.ord_y()

    try:
        avg = average_slope(F)
    except Exception:
        avg = None
    _, _, m_l = lambda_parts(F, lam)
    node = TraceNode(
        lam, sigma, lower_volume(newton_polygon(F)), m_l, d, d - s, avg == lam, kind
    )

    if d == 0:
        return AnalyticFactorization([], F, lam, sigma, node)
    if d == s:
        # single y-stratum: y^d times a unit
        y = BiPoly.monomial(field, 1, 0)
        unit = F.mul_monomial(-d, 0)
        return AnalyticFactorization([y] * d, unit, lam, sigma, node)
    if d == 1:
        return AnalyticFactorization([F], one, lam, sigma, node)

    try:
        part = partial_facto(F, lam, sigma, seed=seed)
    except DegenerateEdge as exc:
        raise DegenerateInput(str(exc)) from exc

    factors = list(part.middles)
    unit = one
    for branch in (part.P0, part.Pinf):
        if branch is None:
            continue
        bd = branch.deg_y()
        if bd == 0:
            unit = unit * branch
            continue
        if bd == 1:
            factors.append(branch)
            continue
        lam2 = average_slope(branch)
        sig2 = sigma_prime(lam, lam2, sigma, branch)
        _, _, m2 = lambda_parts(branch, lam2)
        if sig2 < m2:
            sig2 = m2
        sub = _facto(branch, lam2, sig2, seed, "G" if branch is part.P0 else "H")
        node.children.append(sub.trace)
        factors.extend(sub.factors)
        unit = unit * sub.unit

    factors.sort(key=lambda P: P.sort_key())
    return AnalyticFactorization(factors, unit, lam, sigma, node)


def check_recursion_volume(trace):
    """Validate the divide-and-conquer volume laws on a facto trace.

    Returns (ok, messages).  Checked:
      * w * m_lambda / 2 <= V <= w * m_lambda at nodes using the average slope,
        where w is the horizontal extent of the lower boundary,
      * V_G + V_H <= V / 2 at those nodes' children,
      * longest chain of volume >= 1 nodes is at most 1 + ceil(log2 V_root)
        whenever V_root >= 1.
    """
    msgs = []
    for node in trace.walk():
        if node.lambda_is_average:
            wm = node.width * node.m_lam
            if not (Fraction(wm, 2) <= node.volume <= wm):
                msgs.append(
                    "volume law violated: w*m/2 <= V <= w*m fails (w=%s m=%s V=%s)"
                    % (node.width, node.m_lam, node.volume)
                )
            child_sum = sum((ch.volume for ch in node.children), Fraction(0))
            if child_sum > node.volume / 2:
                msgs.append(
                    "halving law violated: V_G + V_H = %s > V/2 = %s"
                    % (child_sum, node.volume / 2)
                )
    if trace.volume >= 1:
        bound = 1 + math.ceil(math.log2(trace.volume)) if trace.volume > 1 else 1
        if trace.depth() > bound:
            msgs.append(
                "depth %d exceeds 1 + ceil(log2 V) = %d" % (trace.depth(), bound)
            )
    return (not msgs), msgs

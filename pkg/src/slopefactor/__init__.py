"""Bivariate polynomial factorization over prime fields via Newton polygon slopes."""

from .errors import (
    DegenerateEdge,
    DegenerateInput,
    MinimallyDegenerate,
    ModulusNotPrime,
    NotAPartition,
    NotPrimitive,
    NotSeparable,
    ParseError,
    PrecisionTooLow,
    SlopeFactorError,
    ZeroPolynomial,
)
from .ffield import Field, uni_factor, is_irreducible
from .slopecore import (
    BiPoly,
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
from .polygon import (
    AffineMap,
    Edge,
    LatticePolygon,
    apply_affine,
    edge_polynomial,
    edge_to_univariate,
    is_degenerate,
    lattice_length,
    lower_boundary,
    minimal_lattice_length,
    newton_polygon,
    lower_volume,
    volume,
)
from .aplarith import (
    apl_div_trunc,
    apl_hensel,
    apl_mul_trunc,
    lambda_div_trunc,
    lambda_mul_trunc,
    partial_facto,
)
from .facto import AnalyticFactorization, check_recursion_volume, facto
from .recomb import (
    Factorization,
    factor_minimal,
    factorization,
    gcd_y_degree,
    is_separable,
    primitive_part_x,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AnalyticFactorization",
    "BiPoly",
    "DegenerateEdge",
    "DegenerateInput",
    "Edge",
    "Factorization",
    "Field",
    "LatticePolygon",
    "MinimallyDegenerate",
    "ModulusNotPrime",
    "NotAPartition",
    "NotPrimitive",
    "NotSeparable",
    "ParseError",
    "PrecisionTooLow",
    "SlopeFactorError",
    "ZeroPolynomial",
    "apl_div_trunc",
    "apl_hensel",
    "apl_mul_trunc",
    "apply_affine",
    "average_slope",
    "check_recursion_volume",
    "d_lambda",
    "edge_polynomial",
    "edge_to_univariate",
    "facto",
    "factor_minimal",
    "factorization",
    "format_poly",
    "gcd_y_degree",
    "in_lambda",
    "is_degenerate",
    "is_irreducible",
    "is_separable",
    "lambda_div_trunc",
    "lambda_mul_trunc",
    "lambda_parts",
    "lattice_length",
    "lower_boundary",
    "minimal_lattice_length",
    "newton_polygon",
    "partial_facto",
    "primitive_part_x",
    "reciprocal",
    "tau_lambda",
    "trunc_lambda",
    "uni_factor",
    "v_lambda",
    "lower_volume",
    "volume",
]

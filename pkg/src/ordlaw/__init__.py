"""Exact counting, limit densities and monadic limit laws for ordinals below e0 and beyond."""

from .counting import CountSeries, RadiusEstimate, count_series, matula_census, radius_estimate, tail_series
from .mso import eval_finite, parse_formula
from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    SymbolicSegment,
    cnf_split,
    enumerate_by_norm,
    matula_decode,
    matula_encode,
    norm,
    omega_power,
    ordinal,
    parse_ordinal,
    parse_segment,
)
from .recognizer import (
    Recognizer,
    asymptotic_probability,
    builtin_catalog,
    combine,
    eval_recognizer,
    spectrum,
    transformation_lasso,
    validate_recognizer,
)
from .semilinear import LinearSet, SemilinearSet, decompose_beta, intersect, intersect_linear, member, union
from .tauberian import DensityReport, closed_form_limit, density_series, semilinear_limit

__version__ = "0.1.0"

__all__ = [
    "CountSeries", "RadiusEstimate", "count_series", "matula_census", "radius_estimate",
    "tail_series", "eval_finite", "parse_formula", "OMEGA", "ONE", "ZERO", "Ordinal",
    "SymbolicSegment", "cnf_split", "enumerate_by_norm", "matula_decode", "matula_encode", "norm",
    "omega_power", "ordinal", "parse_ordinal", "parse_segment", "Recognizer",
    "asymptotic_probability", "builtin_catalog", "combine", "eval_recognizer", "spectrum",
    "transformation_lasso", "validate_recognizer", "LinearSet", "SemilinearSet", "decompose_beta",
    "intersect", "intersect_linear", "member", "union", "DensityReport", "closed_form_limit",
    "density_series", "semilinear_limit",
]

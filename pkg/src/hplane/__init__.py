"""Exact computer algebra for the deformed plane x*y = q*y*x + h*y^2."""

from .algebra import (
    NCPolynomial,
    PlaneSpec,
    SingularTransformationError,
    commute_x_past_y_power,
    commute_x_power_past_y,
    nc_mul,
    nc_pow,
    normal_form,
    normalize_words,
    rewrite_step,
    verify_manin_transformation,
    x_plus_y,
)
from .binomials import (
    CoeffTable,
    check_recurrence_7,
    check_recurrence_8,
    h_binomial,
    h_binomial_by_recurrence,
    q_binomial,
    q_binomial_from_pochhammer,
    q_pochhammer,
    rising_factorial,
)
from .coeffring import H, ONE, Q, ZERO, ParamPoly, as_rational, poly_eval
from .expr import ExponentError, ParseError, evaluate, parse, to_text

__all__ = [
    "CoeffTable", "ExponentError", "H", "NCPolynomial", "ONE", "ParamPoly", "ParseError",
    "PlaneSpec", "Q", "SingularTransformationError", "ZERO", "as_rational",
    "check_recurrence_7", "check_recurrence_8", "commute_x_past_y_power",
    "commute_x_power_past_y", "evaluate", "h_binomial", "h_binomial_by_recurrence",
    "nc_mul", "nc_pow", "normal_form", "normalize_words", "parse", "poly_eval",
    "q_binomial", "q_binomial_from_pochhammer", "q_pochhammer", "rewrite_step",
    "rising_factorial", "to_text", "verify_manin_transformation", "x_plus_y",
]

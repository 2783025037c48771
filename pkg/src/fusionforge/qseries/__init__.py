from .functions import eta, eta_at, euler_inverse, lattice_theta, minimal_char, sl2_char, theta_mk
from .grammar import evaluate_expression, parse
from .series import QSeries, divide
from .verify import (
    DEFAULT_TAUS,
    TransformReport,
    evaluate,
    verify_extension_characters,
    verify_transformation,
)

__all__ = [
    "DEFAULT_TAUS",
    "QSeries",
    "TransformReport",
    "divide",
    "eta",
    "eta_at",
    "euler_inverse",
    "evaluate",
    "evaluate_expression",
    "lattice_theta",
    "minimal_char",
    "parse",
    "sl2_char",
    "theta_mk",
    "verify_extension_characters",
    "verify_transformation",
]

"""Genuine q-Bernstein-Durrmeyer operators on compact disks of the complex plane.

Exact rational and floating point arithmetic share one code path, selected by
a :class:`NumericMode` carried in the :class:`QContext`.
"""

from .durrmeyer import (
    DirectOperator,
    MomentTable,
    basis,
    basis_poly,
    bernstein_monomial,
    moment_ratio,
    moment_table,
    operator_image,
    remainder_rnm,
    theta,
    u_apply_direct,
    u_apply_series,
    u_monomial_direct,
    u_monomial_recurrence,
    u_monomial_stirling,
)
from .errors import ConvergenceError, DomainError, HypothesisError, QDurrmeyerError
from .harness import (
    ExperimentConfig,
    Report,
    convergence_experiment,
    decay_factor,
    identity_suite,
    lower_bound_experiment,
    saturation_diagnostic,
    voronovskaja_experiment,
)
from .numeric import EXACT, FLOAT64, NumericMode, RationalComplex, parse_mode
from .poly import ComplexPoly
from .qcore import (
    QContext,
    jackson_integral,
    q_beta,
    q_binomial,
    q_derivative,
    q_factorial,
    q_integer,
    q_pochhammer_one_minus,
    q_stirling,
)
from .series import DiskSpec, PowerSeries, builtin_series, convergence_majorant, sup_norm_on_circle, theorem1_bound, theorem2_bound
from .voronovskaja import l1_eval, lq, lq_coefficient, lq_continuity_scan, lq_direct, lq_series

__version__ = "0.1.0"

__all__ = [
    "ComplexPoly",
    "ConvergenceError",
    "DirectOperator",
    "DiskSpec",
    "DomainError",
    "EXACT",
    "ExperimentConfig",
    "FLOAT64",
    "HypothesisError",
    "MomentTable",
    "NumericMode",
    "PowerSeries",
    "QContext",
    "QDurrmeyerError",
    "RationalComplex",
    "Report",
    "basis",
    "basis_poly",
    "bernstein_monomial",
    "builtin_series",
    "convergence_experiment",
    "decay_factor",
    "identity_suite",
    "jackson_integral",
    "l1_eval",
    "lower_bound_experiment",
    "lq",
    "lq_coefficient",
    "lq_continuity_scan",
    "lq_direct",
    "lq_series",
    "moment_ratio",
    "moment_table",
    "operator_image",
    "parse_mode",
    "q_beta",
    "q_binomial",
    "q_derivative",
    "q_factorial",
    "q_integer",
    "q_pochhammer_one_minus",
    "q_stirling",
    "remainder_rnm",
    "saturation_diagnostic",
    "sup_norm_on_circle",
    "convergence_majorant",
    "theorem1_bound",
    "theorem2_bound",
    "theta",
    "u_apply_direct",
    "u_apply_series",
    "u_monomial_direct",
    "u_monomial_recurrence",
    "u_monomial_stirling",
    "voronovskaja_experiment",
]

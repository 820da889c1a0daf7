"""Humbert-Bessel and re-modified Bessel functions: evaluation, ODE derivation
and numerical verification of their identities."""

from .errors import DomainError, QuadratureBudgetError, TruncationError
from .identities import IdentityReport, run_suite
from .operators import (
    OperatorPolynomial,
    apply_to_series,
    euler_power,
    humbert_ode,
    multi_ode,
    multiply,
    ode_residual,
    remodified_ode,
)
from .quadrature import QuadratureResult, integrate_real_line, integrate_semi_infinite
from .series import (
    Evaluation,
    MultiIndex,
    TruncationPolicy,
    airy_ai,
    classical_bessel_I,
    classical_bessel_J0,
    humbert2,
    humbert_generalized,
    humbert_multi,
    remodified,
)

__version__ = "0.1.0"

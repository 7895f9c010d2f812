"""Zonal spherical functions of SO(p, q) by quadrature, series and Horn
hypergeometric series, with a general Horn-series engine."""

from ._backend import active as kernel_backend
from ._backend import use_backend
from .errors import (
    ConvergenceError,
    DomainError,
    EpsOdd,
    PoleError,
    QuadratureNotConverged,
    TranscriptionMismatch,
    ZonalError,
)
from .horn import HornParameter, HornSeries, horn_eval, horn_format, horn_validate
from .kernel import (
    GroupSignature,
    KernelPoint,
    RepresentationParams,
    partner_sigma,
    principal_sigma,
    theta,
    theta_power_partial,
    theta_power_series,
)
from .quad import QuadratureSpec, gauss_legendre, sphere_normalizer, zonal_integral
from .results import EvalResult, MethodTag
from .specfun import gamma, gauss_2f1, log_gamma, pochhammer
from .zonal import (
    HornForm,
    VerifyReport,
    verify_all,
    zonal_closed_q1,
    zonal_eval,
    zonal_horn,
    zonal_series12,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "EpsOdd",
    "EvalResult",
    "GroupSignature",
    "HornForm",
    "HornParameter",
    "HornSeries",
    "KernelPoint",
    "MethodTag",
    "PoleError",
    "QuadratureNotConverged",
    "QuadratureSpec",
    "RepresentationParams",
    "TranscriptionMismatch",
    "VerifyReport",
    "ZonalError",
    "gamma",
    "gauss_2f1",
    "gauss_legendre",
    "horn_eval",
    "horn_format",
    "horn_validate",
    "kernel_backend",
    "log_gamma",
    "partner_sigma",
    "pochhammer",
    "principal_sigma",
    "sphere_normalizer",
    "theta",
    "theta_power_partial",
    "theta_power_series",
    "use_backend",
    "verify_all",
    "zonal_closed_q1",
    "zonal_eval",
    "zonal_horn",
    "zonal_integral",
    "zonal_series12",
]

"""Exact and asymptotic gap (hole) probabilities on centered annuli for the
Mittag-Leffler family of two-dimensional determinantal point processes."""

from .asym import (
    ErfcIntegralSet,
    ExpansionCoefficients,
    GRoute,
    ThetaTerm,
    erfc_integral_constants,
    expansion_coefficients,
    fluctuation,
    gamma_sum_constant,
    log_theta_product,
    predicted_log_gap_probability,
)
from .errors import (
    ConvergenceError,
    DegenerateRadii,
    DomainError,
    GapAsymError,
    HardEdgeRadius,
    MissingRational,
    RadiiOutOfBulk,
    ThetaNonpositive,
)
from .exact import (
    ExactResult,
    IntervalMass,
    MassRoute,
    McEstimate,
    exact_log_gap_probability,
    exact_log_partition,
    kept_interval_log_mass,
    kostlan_sample_radii,
    mc_gap_probability,
)
from .model import CaseTag, GapConfig, ModelParams, annulus_log_mean, classify, limiting_density
from .policy import DEFAULT_POLICY, PrecisionPolicy
from .verify import ConvergenceReport, LadderRow, LadderSummary, convergence_ladder, fluctuation_trace

__version__ = "0.1.0"

__all__ = [
    "CaseTag",
    "ConvergenceError",
    "ConvergenceReport",
    "DEFAULT_POLICY",
    "DegenerateRadii",
    "DomainError",
    "ErfcIntegralSet",
    "ExactResult",
    "ExpansionCoefficients",
    "GRoute",
    "GapAsymError",
    "GapConfig",
    "HardEdgeRadius",
    "IntervalMass",
    "LadderRow",
    "LadderSummary",
    "MassRoute",
    "McEstimate",
    "MissingRational",
    "ModelParams",
    "PrecisionPolicy",
    "RadiiOutOfBulk",
    "ThetaNonpositive",
    "ThetaTerm",
    "annulus_log_mean",
    "classify",
    "convergence_ladder",
    "erfc_integral_constants",
    "exact_log_gap_probability",
    "exact_log_partition",
    "expansion_coefficients",
    "fluctuation",
    "fluctuation_trace",
    "gamma_sum_constant",
    "kept_interval_log_mass",
    "kostlan_sample_radii",
    "limiting_density",
    "log_theta_product",
    "mc_gap_probability",
    "predicted_log_gap_probability",
]

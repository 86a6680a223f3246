"""Rigorous finite-sample lower confidence bounds for positive means.

From an IID sample of a nonnegative random variable, build distribution-free
lower confidence bounds for its expectation via simultaneous upper confidence
bounds on the CDF at the order statistics, with Monte Carlo calibrated bound
families and a classical normal-theory comparator.
"""

from ._kernels import active_backend, available_backends, set_backend
from .calibration import (CalibrationResult, calibrate, calibrate_bisect,
                          calibrate_many, rigorous_lcb)
from .core import (DEFAULT_SEED, BoundVector, LcbReport, Method, Sample,
                   SortedSample, bound_value, bound_value_weighted,
                   normal_theory_lcb, regularize, sort_sample)
from .coverage import (CoverageEstimate, EstimateKind, coverage_exact,
                       coverage_mc, min_lambda_pivot)
from .errors import (DegenerateSampleError, DomainError, IndexOutOfRangeError,
                     LambdaOutOfRangeError, LengthMismatchError,
                     NegativeValueError, NTooLargeError, ParseError,
                     PrecisionLossWarning)
from .experiments import (DistributionSpec, ExperimentConfig, ExperimentResult,
                          lambda_asymptotics_check, run_coverage_experiment)
from .families import (FamilyKind, beta_family, check_family_axioms,
                       closed_form_comparison, family_vector, offset_family,
                       offset_closed_form_derived, offset_closed_form_lcb)
from .special import (beta_ucb, brownian_bridge_sup_quantile, normal_quantile,
                      reg_inc_beta)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "active_backend", "available_backends", "set_backend",
    "Sample", "SortedSample", "BoundVector", "LcbReport", "Method",
    "DEFAULT_SEED",
    "sort_sample", "regularize", "bound_value", "bound_value_weighted",
    "normal_theory_lcb",
    "CoverageEstimate", "EstimateKind", "coverage_exact", "coverage_mc",
    "min_lambda_pivot",
    "FamilyKind", "offset_family", "beta_family", "family_vector",
    "check_family_axioms", "closed_form_comparison",
    "offset_closed_form_lcb", "offset_closed_form_derived",
    "CalibrationResult", "calibrate", "calibrate_many", "calibrate_bisect",
    "rigorous_lcb",
    "DistributionSpec", "ExperimentConfig", "ExperimentResult",
    "run_coverage_experiment", "lambda_asymptotics_check",
    "reg_inc_beta", "beta_ucb", "normal_quantile",
    "brownian_bridge_sup_quantile",
    "NegativeValueError", "LengthMismatchError", "DegenerateSampleError",
    "NTooLargeError", "LambdaOutOfRangeError", "DomainError",
    "IndexOutOfRangeError", "ParseError", "PrecisionLossWarning",
]

"""Family calibration: find the smallest lam whose coverage reaches 1 - alpha.

The Monte Carlo route simulates sorted uniform vectors once, reduces each to
its pivot (the smallest lam admitting that vector, see
coverage.min_lambda_pivot) and reads lam(alpha) off the empirical pivot
quantile; one simulation pass therefore calibrates every requested alpha.
The quantile index rounds up, erring toward higher coverage. For small n an
exact-recursion bisection provides an independent oracle.
"""

from dataclasses import dataclass
import math
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .core import (DEFAULT_SEED, LcbReport, Method, Sample, SortedSample,
                   bound_value, normal_theory_lcb, sort_sample)
from .coverage import (EXACT_N_LIMIT, CoverageEstimate, coverage_exact,
                       coverage_mc)
from .families import FamilyKind, family_vector

__all__ = [
    "CalibrationResult",
    "pivot_quantile",
    "draw_pivots",
    "calibrate",
    "calibrate_many",
    "calibrate_bisect",
    "rigorous_lcb",
]

DEFAULT_REPLICATES = 200_000
_MIN_REPLICATES = 1000


@dataclass(frozen=True)
class CalibrationResult:
    family: FamilyKind
    alpha: float
    lambda_star: float
    u_star: object  # BoundVector
    replicates: int
    seed: Optional[int]
    achieved_p: Optional[CoverageEstimate]


def pivot_quantile(sorted_pivots: np.ndarray, alpha: float) -> float:
    """Upper (1-alpha) empirical quantile, ceiling-index convention."""
    r = sorted_pivots.size
    k = math.ceil((1.0 - alpha) * r)
    k = min(max(k, 1), r)
    return float(sorted_pivots[k - 1])


def draw_pivots(family: FamilyKind, replicates: int,
                seed: int = DEFAULT_SEED) -> np.ndarray:
    """Simulated pivots for `replicates` sorted-uniform draws (unsorted)."""
    if family.kind == "offset":
        return _kernels.offset_pivots(seed, _kernels.PURPOSE_PIVOT, family.n, replicates)
    return _kernels.beta_pivots(seed, _kernels.PURPOSE_PIVOT, family.n, replicates)


def _validate(alpha, replicates):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if replicates < _MIN_REPLICATES:
        raise ValueError(f"replicates must be >= {_MIN_REPLICATES}, got {replicates}")


def calibrate_many(family: FamilyKind, alphas: Sequence[float],
                   replicates: int = DEFAULT_REPLICATES,
                   seed: int = DEFAULT_SEED,
                   coverage_check: bool = True) -> list[CalibrationResult]:
    """Calibrate one family at several alphas from a single simulation pass.

    When ``coverage_check`` is set, each calibrated vector is re-evaluated by
    an independent coverage_mc stream and the estimate attached to the result.
    """
    alphas = list(alphas)
    for alpha in alphas:
        _validate(alpha, replicates)
    pivots = np.sort(draw_pivots(family, replicates, seed))
    results = []
    for alpha in alphas:
        lam = pivot_quantile(pivots, alpha)
        u = family_vector(family, lam)
        achieved = coverage_mc(u, replicates, seed) if coverage_check else None
        results.append(CalibrationResult(
            family=family, alpha=alpha, lambda_star=lam, u_star=u,
            replicates=replicates, seed=seed, achieved_p=achieved))
    return results


def calibrate(family: FamilyKind, alpha: float,
              replicates: int = DEFAULT_REPLICATES,
              seed: int = DEFAULT_SEED,
              coverage_check: bool = True) -> CalibrationResult:
    """Monte Carlo calibration of lam(alpha) = min{lam : coverage >= 1 - alpha}."""
    return calibrate_many(family, [alpha], replicates, seed, coverage_check)[0]


def calibrate_bisect(family: FamilyKind, alpha: float, tolerance: float = 1e-9,
                     n_limit: int = EXACT_N_LIMIT) -> CalibrationResult:
    """Exact-recursion bisection for lam(alpha); the small-n calibration oracle.

    Coverage is nondecreasing in lam, so bisection brackets the minimal
    admissible lam; the returned value is the certified-feasible upper end
    of the final bracket.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    target = 1.0 - alpha

    def feasible(lam):
        return coverage_exact(family_vector(family, lam), n_limit=n_limit).p >= target

    if feasible(0.0):
        lam_star = 0.0
    else:
        lo, hi = 0.0, 1.0
        while hi - lo > tolerance:
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                hi = mid
            else:
                lo = mid
        lam_star = hi
    u = family_vector(family, lam_star)
    return CalibrationResult(
        family=family, alpha=alpha, lambda_star=lam_star, u_star=u,
        replicates=0, seed=None,
        achieved_p=coverage_exact(u, n_limit=n_limit))


def rigorous_lcb(sample, family, alpha: float = 0.025,
                 replicates: int = DEFAULT_REPLICATES,
                 seed: int = DEFAULT_SEED) -> LcbReport:
    """Distribution-free LCB for the mean: calibrate, then evaluate the bound.

    ``family`` may be a FamilyKind or just "offset"/"beta" (sized from the
    sample). The report carries the full calibration provenance and, for
    n >= 2, the classical normal-theory comparator at the same alpha.
    """
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    if isinstance(family, str):
        family = FamilyKind(family, sample.n)
    if family.n != sample.n:
        raise ValueError(
            f"family is sized for n = {family.n} but the sample has n = {sample.n}")
    ordered = sort_sample(sample)
    cal = calibrate(family, alpha, replicates, seed)
    bound = bound_value(ordered, cal.u_star)
    normal = normal_theory_lcb(sample, alpha).bound if sample.n >= 2 else None
    method = Method.OFFSET_FAMILY if family.kind == "offset" else Method.BETA_FAMILY
    return LcbReport(
        bound=bound,
        alpha=alpha,
        method=method,
        sample_mean=sample.mean,
        sample_sd=sample.sd,
        calibration=cal,
        normal_lcb=normal,
    )

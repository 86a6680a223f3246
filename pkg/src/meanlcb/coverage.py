"""Joint coverage probability of simultaneous order-statistic bounds.

p_u = P(U_(1) <= u_1, ..., U_(n) <= u_n) for the order statistics of n IID
uniforms: evaluated exactly by a boundary-crossing recursion for small n and
by Monte Carlo for general n. The recursion is evaluated in extended
precision; its alternating sums still cancel catastrophically as n grows,
hence the hard size limit and the precision-loss diagnostic.
"""

from dataclasses import dataclass
from enum import Enum
import math
import warnings
from typing import Optional

import numpy as np

from . import _kernels
from .core import DEFAULT_SEED, BoundVector, regularize
from .errors import NTooLargeError, PrecisionLossWarning
from .families import FamilyKind

__all__ = [
    "EstimateKind",
    "CoverageEstimate",
    "EXACT_N_LIMIT",
    "coverage_exact",
    "coverage_mc",
    "min_lambda_pivot",
]

EXACT_N_LIMIT = 30
DEFAULT_REPLICATES = 200_000


class EstimateKind(str, Enum):
    EXACT = "exact-recursion"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class CoverageEstimate:
    p: float
    std_err: float
    method: EstimateKind
    replicates: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"coverage probability must be in [0, 1], got {self.p}")
        if self.method is EstimateKind.EXACT and self.std_err != 0.0:
            raise ValueError("exact estimates carry no Monte Carlo error")


def _recursion(u, dtype):
    # c_k = sum_{i<k} (-1)^{k-i+1} C(k,i) c_i u_{i+1}^{k-i}, p = c_n.
    # (Equivalent to the d_k form with c_k = k! d_k; binomials stay exact.)
    n = u.size
    c = np.zeros(n + 1, dtype=dtype)
    c[0] = dtype(1.0)
    worst_cond = 0.0
    for k in range(1, n + 1):
        s = dtype(0.0)
        asum = dtype(0.0)
        for i in range(k):
            term = dtype(math.comb(k, i)) * c[i] * dtype(u[i]) ** (k - i)
            if (k - i) % 2 == 0:
                term = -term
            s += term
            asum += abs(term)
        c[k] = s
        if s != 0.0:
            worst_cond = max(worst_cond, float(asum / abs(s)))
    return c[n], worst_cond


def coverage_exact(u, n_limit: int = EXACT_N_LIMIT) -> CoverageEstimate:
    """Exact p_u by recursion (input regularized first; coverage is unchanged).

    Raises NTooLargeError beyond ``n_limit``: past roughly n = 30 the
    alternating recursion loses double precision outright. Emits a
    PrecisionLossWarning when the estimated relative loss of the returned
    value exceeds 1e-6.
    """
    u = regularize(u)
    n = u.n
    if n > n_limit:
        raise NTooLargeError(
            f"exact recursion limited to n <= {n_limit} (got n = {n}); "
            "use coverage_mc for larger samples")
    p_ld, cond = _recursion(u.u, np.longdouble)
    p_64, _ = _recursion(u.u, np.float64)
    eps64 = float(np.finfo(np.float64).eps)
    eps_ld = float(np.finfo(np.longdouble).eps)
    p = float(p_ld)
    if eps_ld < eps64:
        # The float64/longdouble discrepancy measures the cancellation
        # directly; rescaling by the eps ratio estimates the loss of the
        # returned (extended precision) value. The factor 10 covers the
        # extra compounding observed between the two precisions.
        loss64 = abs(float(p_64) - p) / max(abs(p), 1e-300)
        est_loss = 10.0 * loss64 * (eps_ld / eps64)
    else:  # platform without extended precision: condition-number heuristic
        est_loss = cond * eps64
    if est_loss > 1e-6:
        warnings.warn(
            f"cancellation in the exact coverage recursion: estimated relative "
            f"loss {est_loss:.2e} at n = {n}",
            PrecisionLossWarning,
            stacklevel=2,
        )
    return CoverageEstimate(p=min(max(p, 0.0), 1.0), std_err=0.0,
                            method=EstimateKind.EXACT)


def coverage_mc(u, replicates: int = DEFAULT_REPLICATES,
                seed: int = DEFAULT_SEED) -> CoverageEstimate:
    """Monte Carlo p_u: fraction of sorted-uniform draws inside the region.

    Replicate r is a pure function of (seed, r), so the estimate does not
    depend on batching or thread count. Regularizing u beforehand is
    unnecessary: the constrained event is identical either way.
    """
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates}")
    if not isinstance(u, BoundVector):
        u = BoundVector(u)
    hits = _kernels.count_all_below(seed, _kernels.PURPOSE_COVERAGE, u.u, replicates)
    p = hits / replicates
    return CoverageEstimate(
        p=p,
        std_err=math.sqrt(p * (1.0 - p) / replicates),
        method=EstimateKind.MONTE_CARLO,
        replicates=replicates,
        seed=seed,
    )


def min_lambda_pivot(sorted_uniforms, family: FamilyKind) -> float:
    """Smallest family parameter admitting the given sorted uniform vector.

    For the offset family this is max_i (U_(i) - i/(n+1)) clamped to [0, 1];
    for the beta family, max_i I(U_(i); i, n-i+1) by quantile/CDF duality.
    The defining property (tested, and relied on by calibration): the vector
    satisfies U_(i) <= u_i^lam for all i exactly when lam >= pivot.
    """
    arr = np.asarray(sorted_uniforms, dtype=np.float64)
    if arr.ndim != 1 or arr.size != family.n:
        raise ValueError(f"expected a sorted vector of length {family.n}")
    if np.any(np.diff(arr) < 0.0):
        raise ValueError("uniform vector must be nondecreasing")
    if arr[0] < 0.0 or arr[-1] > 1.0:
        raise ValueError("uniform values must lie in [0, 1]")
    n = family.n
    if family.kind == "offset":
        grid = np.arange(1, n + 1, dtype=np.float64) / (n + 1)
        return float(np.clip((arr - grid).max(), 0.0, 1.0))
    a = np.arange(1, n + 1, dtype=np.float64)
    return float(_kernels.betainc_block(arr, a, n + 1.0 - a).max())

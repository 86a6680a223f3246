"""Domain types and the order-statistic bound functional.

Given a nonnegative IID sample with order statistics x_(1) <= ... <= x_(n)
(x_(0) = 0) and a vector u in [0,1]^n of simultaneous CDF upper bounds at
those points, the bound

    B_u = sum_k (1 - u_k) (x_(k) - x_(k-1))
        = sum_k (u_{k+1} - u_k) x_(k),   with u_{n+1} = 1,

is a lower confidence bound for the mean at the coverage level delivered by
u (see the coverage module). Both forms are implemented; the second serves
as a cross-check of the first.
"""

from dataclasses import dataclass, field
from enum import Enum
import math
from typing import Optional

import numpy as np

from .errors import DegenerateSampleError, LengthMismatchError, NegativeValueError
from .special import normal_quantile

# Default stream seed for every simulation entry point; override per call.
DEFAULT_SEED = 20081006


def _as_float_array(values, what):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise DegenerateSampleError(f"{what} must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite values")
    return arr


@dataclass(frozen=True)
class Sample:
    """Raw nonnegative observations, order preserved, ties allowed."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_float_array(self.values, "sample")
        if np.any(arr < 0.0):
            bad = float(arr[arr < 0.0][0])
            raise NegativeValueError(
                f"negative observation {bad} violates the positivity assumption")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    @property
    def sd(self) -> float:
        """Sample standard deviation (divisor n-1); NaN for n < 2."""
        if self.n < 2:
            return math.nan
        return float(self.values.std(ddof=1))


@dataclass(frozen=True)
class SortedSample:
    """Nondecreasing observations; the implicit x_(0) = 0 is supplied by ops."""

    ordered: np.ndarray

    def __post_init__(self):
        arr = _as_float_array(self.ordered, "sorted sample")
        if arr[0] < 0.0:
            raise NegativeValueError(f"negative observation {float(arr[0])}")
        if np.any(np.diff(arr) < 0.0):
            raise ValueError("sorted sample must be nondecreasing")
        arr.setflags(write=False)
        object.__setattr__(self, "ordered", arr)

    @property
    def n(self) -> int:
        return int(self.ordered.size)


@dataclass(frozen=True)
class BoundVector:
    """A vector u in [0,1]^n of simultaneous CDF upper bounds.

    ``regularized`` records that the suffix-minimum cleanup has been applied,
    i.e. the coordinates are nondecreasing.
    """

    u: np.ndarray
    regularized: bool = False

    def __post_init__(self):
        arr = _as_float_array(self.u, "bound vector")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("bound vector coordinates must lie in [0, 1]")
        if self.regularized and np.any(np.diff(arr) < 0.0):
            raise ValueError("regularized bound vector must be nondecreasing")
        arr.setflags(write=False)
        object.__setattr__(self, "u", arr)

    @property
    def n(self) -> int:
        return int(self.u.size)


class Method(str, Enum):
    OFFSET_FAMILY = "offset-family"
    BETA_FAMILY = "beta-family"
    EXPLICIT_U = "explicit-u"
    NORMAL_THEORY = "normal-theory"


@dataclass(frozen=True)
class LcbReport:
    """A lower confidence bound together with its provenance.

    ``calibration`` holds the CalibrationResult for family methods; the
    normal-theory comparator is repeated in ``normal_lcb`` when available.
    Rigorous methods always satisfy 0 <= bound <= x_(n); the normal-theory
    bound carries no such guarantee (it can go negative on heavy tails).
    """

    bound: float
    alpha: float
    method: Method
    sample_mean: float
    sample_sd: float
    calibration: Optional[object] = None
    normal_lcb: Optional[float] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.method is not Method.NORMAL_THEORY and self.bound < 0.0:
            raise ValueError(f"rigorous bound must be nonnegative, got {self.bound}")


def sort_sample(sample) -> SortedSample:
    """Nondecreasing rearrangement of a sample; rejects negative values."""
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    return SortedSample(np.sort(sample.values))


def regularize(u) -> BoundVector:
    """Suffix-minimum cleanup: u'_i = min_{j >= i} u_j.

    The constrained event {F(x_(i)) <= u_i for all i} is unchanged (the order
    statistics are sorted, so the binding constraint at i is the smallest
    u_j with j >= i), hence coverage is preserved exactly while the bound
    value can only increase.
    """
    if not isinstance(u, BoundVector):
        u = BoundVector(u)
    if u.regularized:
        return u
    cleaned = np.minimum.accumulate(u.u[::-1])[::-1]
    return BoundVector(cleaned, regularized=True)


def bound_value(x, u) -> float:
    """Evaluate B_u on a sorted sample (gap form, regularizing u if needed)."""
    if not isinstance(x, SortedSample):
        x = SortedSample(x)
    if not isinstance(u, BoundVector):
        u = BoundVector(u)
    if u.n != x.n:
        raise LengthMismatchError(f"bound vector has {u.n} coordinates, sample has {x.n}")
    if not u.regularized:
        u = regularize(u)
    gaps = np.diff(x.ordered, prepend=0.0)
    return float(np.sum((1.0 - u.u) * gaps))


def bound_value_weighted(x, u) -> float:
    """B_u in the rearranged weight form sum_k (u_{k+1} - u_k) x_(k)."""
    if not isinstance(x, SortedSample):
        x = SortedSample(x)
    if not isinstance(u, BoundVector):
        u = BoundVector(u)
    if u.n != x.n:
        raise LengthMismatchError(f"bound vector has {u.n} coordinates, sample has {x.n}")
    if not u.regularized:
        u = regularize(u)
    u_next = np.append(u.u[1:], 1.0)
    return float(np.sum((u_next - u.u) * x.ordered))


def normal_theory_lcb(sample, alpha: float = 0.025) -> LcbReport:
    """Classical one-sided normal-theory LCB: mean - z_{1-alpha} * sd / sqrt(n)."""
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if sample.n < 2:
        raise DegenerateSampleError(
            "normal-theory bound needs n >= 2 for a standard deviation")
    z = normal_quantile(1.0 - alpha)
    bound = sample.mean - z * sample.sd / math.sqrt(sample.n)
    return LcbReport(
        bound=bound,
        alpha=alpha,
        method=Method.NORMAL_THEORY,
        sample_mean=sample.mean,
        sample_sd=sample.sd,
        normal_lcb=bound,
        metadata={"z": z},
    )

"""Tunable one-parameter families of simultaneous CDF bound vectors.

A family maps lam in [0, 1] to a bound vector, coordinatewise nondecreasing
and continuous in lam, reaching (1, ..., 1) at lam = 1. Two instances:

offset:  u_i = min(1, i/(n+1) + lam), a uniform shift of the mean positions
         of the uniform order statistics;
beta:    u_i = Beta(i, n-i+1) quantile at lam, motivated by the marginal law
         of F(X_(i)).
"""

from dataclasses import dataclass
import math
from typing import Optional

import numpy as np

from . import _kernels
from .core import BoundVector, SortedSample, bound_value
from .errors import IndexOutOfRangeError, LambdaOutOfRangeError

__all__ = [
    "FamilyKind",
    "offset_family",
    "beta_family",
    "family_vector",
    "FamilyAxiomReport",
    "check_family_axioms",
    "offset_closed_form_lcb",
    "offset_closed_form_derived",
    "ClosedFormComparison",
    "closed_form_comparison",
]

_KINDS = ("offset", "beta")


@dataclass(frozen=True)
class FamilyKind:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {_KINDS}")
        if self.n < 1:
            raise ValueError(f"family size must be >= 1, got {self.n}")


def offset_family(n: int) -> FamilyKind:
    return FamilyKind("offset", n)


def beta_family(n: int) -> FamilyKind:
    return FamilyKind("beta", n)


def _check_lambda(lam):
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRangeError(f"lambda must be in [0, 1], got {lam}")


def family_vector(family: FamilyKind, lam: float) -> BoundVector:
    """The family member at parameter lam, as a regularized bound vector.

    Both families produce coordinates nondecreasing in i by construction;
    this is asserted (to 1e-9) rather than silently repaired, and only
    sub-tolerance floating noise is smoothed away.
    """
    _check_lambda(lam)
    n = family.n
    if family.kind == "offset":
        u = np.minimum(1.0, np.arange(1, n + 1, dtype=np.float64) / (n + 1) + lam)
    else:
        u = np.array([_kernels.scalar_beta_ucb(float(i), float(n - i + 1), float(lam))
                      for i in range(1, n + 1)])
    if np.any(np.diff(u) < -1e-9):
        raise RuntimeError(
            f"{family.kind} family produced a decreasing bound vector at lam={lam}")
    u = np.maximum.accumulate(u)
    return BoundVector(u, regularized=True)


@dataclass(frozen=True)
class FamilyAxiomReport:
    family: FamilyKind
    monotone_in_lambda: bool
    continuous: bool
    reaches_one: bool
    max_step: float
    coarse_max_step: float

    @property
    def all_pass(self) -> bool:
        return self.monotone_in_lambda and self.continuous and self.reaches_one


def check_family_axioms(family: FamilyKind, grid) -> FamilyAxiomReport:
    """Diagnostic check of the three family axioms over a lambda grid.

    Monotonicity is checked pairwise along the grid; continuity by requiring
    the maximum coordinate step not to grow under grid refinement (for a
    monotone family each coarse step dominates the refined steps inside it);
    the supremum axiom by evaluating at lam = 1.
    """
    grid = np.sort(np.asarray(grid, dtype=np.float64))
    if grid.size == 0:
        raise ValueError("lambda grid must be nonempty")
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise LambdaOutOfRangeError("lambda grid must lie within [0, 1]")
    vectors = np.array([family_vector(family, lam).u for lam in grid])
    diffs = np.diff(vectors, axis=0)
    monotone = bool((diffs >= -1e-12).all()) if len(grid) > 1 else True
    max_step = float(np.abs(diffs).max()) if len(grid) > 1 else 0.0
    coarse = vectors[::2]
    coarse_step = (float(np.abs(np.diff(coarse, axis=0)).max())
                   if coarse.shape[0] > 1 else max_step)
    continuous = max_step <= coarse_step + 1e-12
    reaches_one = bool(np.all(family_vector(family, 1.0).u == 1.0))
    return FamilyAxiomReport(
        family=family,
        monotone_in_lambda=monotone,
        continuous=continuous,
        reaches_one=reaches_one,
        max_step=max_step,
        coarse_max_step=coarse_step,
    )


def offset_closed_form_lcb(x: SortedSample, lam: float) -> float:
    """The published closed-form shortcut for the offset-family bound, verbatim.

    Kept for comparison only: its indexing addresses X_(n_lam) with
    n_lam = ceil((n+1)(1-lam)), which does not exist whenever lam is small
    (n_lam = n+1 already at lam = 0). The generic evaluator is authoritative;
    use closed_form_comparison to see both side by side.
    """
    if not isinstance(x, SortedSample):
        x = SortedSample(x)
    _check_lambda(lam)
    n = x.n
    n_lam = math.ceil((n + 1) * (1.0 - lam))
    if n_lam == 0:
        return 0.0
    if n_lam > n:
        raise IndexOutOfRangeError(
            f"closed form requests order statistic {n_lam} of a sample of {n}")
    head = float(x.ordered[:n_lam - 1].sum()) / (n + 1)
    return head + (1.0 - lam - (n_lam - 1) / (n + 1)) * float(x.ordered[n_lam - 1])


def offset_closed_form_derived(x: SortedSample, lam: float) -> float:
    """Closed form rederived from the bound functional (shifted indexing).

    Sums to n_lam - 2 with the remaining mass on X_(n_lam - 1); agrees with
    the generic evaluator for every n and lam.
    """
    if not isinstance(x, SortedSample):
        x = SortedSample(x)
    _check_lambda(lam)
    n = x.n
    n_lam = math.ceil((n + 1) * (1.0 - lam))
    k_max = min(n_lam - 1, n)
    if k_max <= 0:
        return 0.0
    head = float(x.ordered[:k_max - 1].sum()) / (n + 1)
    return head + (1.0 - lam - k_max / (n + 1)) * float(x.ordered[k_max - 1])


@dataclass(frozen=True)
class ClosedFormComparison:
    lam: float
    generic: float
    derived: float
    literal: Optional[float]
    literal_error: Optional[str]

    @property
    def literal_diverges(self) -> bool:
        if self.literal is None:
            return True
        return abs(self.literal - self.generic) > 1e-9 * max(1.0, abs(self.generic))


def closed_form_comparison(x, lam: float) -> ClosedFormComparison:
    """Evaluate the generic bound, the rederived closed form and the published
    closed form side by side, flagging (never raising on) any divergence."""
    if not isinstance(x, SortedSample):
        x = SortedSample(x)
    family = offset_family(x.n)
    generic = bound_value(x, family_vector(family, lam))
    derived = offset_closed_form_derived(x, lam)
    try:
        literal = offset_closed_form_lcb(x, lam)
        literal_error = None
    except IndexOutOfRangeError as exc:
        literal = None
        literal_error = str(exc)
    return ClosedFormComparison(lam=lam, generic=generic, derived=derived,
                                literal=literal, literal_error=literal_error)

"""Reproducible simulation studies of coverage and large-n behavior.

Calibration depends only on (family, n, alpha), never on the data, so each
study calibrates once per sample size and then evaluates the bound across
simulated samples drawn from counter-based streams: every run is a pure
function of its config, bit for bit.
"""

import csv
from dataclasses import dataclass, field
import io
import math
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .calibration import DEFAULT_REPLICATES, calibrate
from .core import DEFAULT_SEED
from .families import beta_family, offset_family
from .special import brownian_bridge_sup_quantile, normal_quantile

__all__ = [
    "DistributionSpec",
    "ExperimentConfig",
    "ExperimentRow",
    "ExperimentResult",
    "run_coverage_experiment",
    "AsymptoticsRow",
    "lambda_asymptotics_check",
]

_DIST_KINDS = ("uniform01", "exponential", "pareto", "bounded_discrete")


@dataclass(frozen=True)
class DistributionSpec:
    """Sampling distribution, drawn by inverse transform from uniforms.

    pareto uses the survival form P(X > x) = x^(-tail_index) for x >= 1;
    bounded_discrete picks uniformly from ``values``.
    """

    kind: str
    tail_index: Optional[float] = None
    values: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in _DIST_KINDS:
            raise ValueError(f"unknown distribution {self.kind!r}; expected one of {_DIST_KINDS}")
        if self.kind == "pareto":
            if self.tail_index is None or self.tail_index <= 1.0:
                raise ValueError("pareto needs tail_index > 1 so the mean exists")
        if self.kind == "bounded_discrete":
            if not self.values:
                raise ValueError("bounded_discrete needs a nonempty value list")
            vals = tuple(sorted(float(v) for v in self.values))
            if vals[0] < 0.0:
                raise ValueError("bounded_discrete values must be nonnegative")
            object.__setattr__(self, "values", vals)

    @property
    def true_mean(self) -> float:
        if self.kind == "uniform01":
            return 0.5
        if self.kind == "exponential":
            return 1.0
        if self.kind == "pareto":
            a = self.tail_index
            return a / (a - 1.0)
        return float(np.mean(self.values))

    def transform(self, u: np.ndarray) -> np.ndarray:
        """Inverse-CDF transform of uniforms in (0, 1)."""
        if self.kind == "uniform01":
            return u
        if self.kind == "exponential":
            return -np.log1p(-u)
        if self.kind == "pareto":
            return (1.0 - u) ** (-1.0 / self.tail_index)
        vals = np.asarray(self.values)
        idx = np.minimum((u * len(vals)).astype(np.int64), len(vals) - 1)
        return vals[idx]

    def label(self) -> str:
        if self.kind == "pareto":
            return f"pareto({self.tail_index:g})"
        if self.kind == "bounded_discrete":
            return "bounded_discrete(" + ",".join(f"{v:g}" for v in self.values) + ")"
        return self.kind


@dataclass(frozen=True)
class ExperimentConfig:
    distribution: DistributionSpec
    n_grid: tuple
    alpha: float
    trials: int
    seed: int = DEFAULT_SEED
    replicates: int = DEFAULT_REPLICATES

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if not grid:
            raise ValueError("n_grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be strictly ascending")
        if grid[0] < 1:
            raise ValueError("sample sizes must be >= 1")
        object.__setattr__(self, "n_grid", grid)
        if self.trials < 100:
            raise ValueError(f"trials must be >= 100, got {self.trials}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    trials: int
    offset_coverage: float
    offset_coverage_se: float
    offset_mean_gap: float
    beta_coverage: float
    beta_coverage_se: float
    beta_mean_gap: float
    normal_coverage: float
    normal_coverage_se: float
    normal_mean_gap: float


_CSV_COLUMNS = [
    "n", "trials",
    "offset_coverage", "offset_coverage_se", "offset_mean_gap",
    "beta_coverage", "beta_coverage_se", "beta_mean_gap",
    "normal_coverage", "normal_coverage_se", "normal_mean_gap",
]


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rows: tuple = field(default_factory=tuple)

    def to_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([str(row.n), str(row.trials)] + [
                repr(getattr(row, c)) for c in _CSV_COLUMNS[2:]])

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def _coverage_stats(bounds, mu, trials):
    cov = float(np.count_nonzero(bounds <= mu)) / trials
    se = math.sqrt(cov * (1.0 - cov) / trials)
    gap = mu - float(bounds.mean())
    return cov, se, gap


def run_coverage_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Realized coverage and mean gap of the rigorous and normal bounds.

    For each n: calibrate both families once, then draw ``trials`` samples
    and record how often each bound stays below the true mean.
    """
    mu = cfg.distribution.true_mean
    rows = []
    for n in cfg.n_grid:
        u_off = calibrate(offset_family(n), cfg.alpha, cfg.replicates,
                          cfg.seed, coverage_check=False).u_star.u
        u_beta = calibrate(beta_family(n), cfg.alpha, cfg.replicates,
                           cfg.seed, coverage_check=False).u_star.u
        uni = _kernels.uniform_block(cfg.seed, _kernels.experiment_purpose(n),
                                     cfg.trials, n)
        x = np.sort(cfg.distribution.transform(uni), axis=1)
        gaps = np.diff(x, axis=1, prepend=0.0)
        b_off = gaps @ (1.0 - u_off)
        b_beta = gaps @ (1.0 - u_beta)
        if n >= 2:
            z = normal_quantile(1.0 - cfg.alpha)
            b_norm = x.mean(axis=1) - z * x.std(axis=1, ddof=1) / math.sqrt(n)
            norm_stats = _coverage_stats(b_norm, mu, cfg.trials)
        else:
            norm_stats = (math.nan, math.nan, math.nan)
        off_stats = _coverage_stats(b_off, mu, cfg.trials)
        beta_stats = _coverage_stats(b_beta, mu, cfg.trials)
        rows.append(ExperimentRow(
            n=n, trials=cfg.trials,
            offset_coverage=off_stats[0], offset_coverage_se=off_stats[1],
            offset_mean_gap=off_stats[2],
            beta_coverage=beta_stats[0], beta_coverage_se=beta_stats[1],
            beta_mean_gap=beta_stats[2],
            normal_coverage=norm_stats[0], normal_coverage_se=norm_stats[1],
            normal_mean_gap=norm_stats[2],
        ))
    return ExperimentResult(config=cfg, rows=tuple(rows))


@dataclass(frozen=True)
class AsymptoticsRow:
    n: int
    lambda_star: float
    lambda_scaled: float  # lambda * sqrt(n)
    q_alpha: float
    rel_deviation: float


def lambda_asymptotics_check(alpha: float, n_grid: Sequence[int],
                             replicates: int = DEFAULT_REPLICATES,
                             seed: int = DEFAULT_SEED) -> list[AsymptoticsRow]:
    """Offset-family calibration against its Brownian-bridge limit.

    For large n, lam(alpha) * sqrt(n) approaches the bridge supremum quantile
    q_alpha = sqrt(log(1/alpha)/2). Returns one row per n with the relative
    deviation; callers decide what deviation to accept at which n.
    """
    q = brownian_bridge_sup_quantile(alpha)
    rows = []
    for n in n_grid:
        lam = calibrate(offset_family(int(n)), alpha, replicates, seed,
                        coverage_check=False).lambda_star
        scaled = lam * math.sqrt(n)
        rows.append(AsymptoticsRow(
            n=int(n), lambda_star=lam, lambda_scaled=scaled, q_alpha=q,
            rel_deviation=abs(scaled - q) / q))
    return rows

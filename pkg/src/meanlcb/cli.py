"""Command-line interface.

Subcommands: lcb, calibrate, coverage, experiment, reproduce-lancet,
plotdata, bench. Every command is deterministic given its flags (seeds
included); CSV output is byte-identical across reruns on a fixed backend.
Exit codes: 0 success, 1 computation or data error, 2 usage or IO error.
"""

import argparse
import csv
import math
import os
import re
import sys

from . import benchmark
from .calibration import DEFAULT_REPLICATES, calibrate_many, rigorous_lcb
from .core import DEFAULT_SEED, Sample, normal_theory_lcb, sort_sample
from .coverage import coverage_exact, coverage_mc
from .errors import NegativeValueError, ParseError
from .experiments import (DistributionSpec, ExperimentConfig,
                          lambda_asymptotics_check, run_coverage_experiment)
from .families import FamilyKind, closed_form_comparison
from .lancet import (CLUSTER_COUNT_PROSE_DISCREPANCY, LANCET_ROUNDED_MEAN,
                     LANCET_SCALE_FACTOR, LANCET_TOTAL_POINT_ESTIMATE,
                     lancet_sample)

_TOKEN = re.compile(r"[^\s,]+")


class SystemExit2(Exception):
    """Usage/IO failure: caught in main and mapped to exit status 2."""


def ingest(stream) -> Sample:
    """Parse whitespace- or comma-separated nonnegative numbers.

    Blank lines and lines starting with '#' are ignored. Raises ParseError
    (with 1-based line and column) on malformed tokens and
    NegativeValueError on negative values.
    """
    values = []
    token_index = 0
    for line_no, line in enumerate(stream, start=1):
        if line.lstrip().startswith("#"):
            continue
        for match in _TOKEN.finditer(line):
            token_index += 1
            text = match.group()
            try:
                value = float(text)
            except ValueError:
                raise ParseError(
                    f"cannot parse {text!r} as a number "
                    f"(line {line_no}, column {match.start() + 1})",
                    line=line_no, column=match.start() + 1) from None
            if not math.isfinite(value):
                raise ParseError(
                    f"non-finite value {text!r} (line {line_no}, "
                    f"column {match.start() + 1})",
                    line=line_no, column=match.start() + 1)
            if value < 0.0:
                raise NegativeValueError(
                    f"negative value {value:g} at token {token_index} "
                    f"(line {line_no}, column {match.start() + 1})")
            values.append(value)
    if not values:
        raise ParseError("no numeric data found in input")
    return Sample(values)


def _read_sample(args) -> Sample:
    if getattr(args, "stdin", False):
        return ingest(sys.stdin)
    path = args.file
    if path is None:
        raise SystemExit2("one of --file or --stdin is required")
    if not os.path.isfile(path):
        raise SystemExit2(f"input file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return ingest(fh)


def _families_for(choice, n):
    kinds = ("offset", "beta") if choice == "both" else (choice,)
    return [FamilyKind(kind, n) for kind in kinds]


def _fmt(value, digits=6):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "n/a"
    return f"{value:.{digits}f}"


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# lcb
# ---------------------------------------------------------------------------

def cmd_lcb(args) -> int:
    sample = _read_sample(args)
    reports = [rigorous_lcb(sample, fam, args.alpha, args.replicates, args.seed)
               for fam in _families_for(args.family, sample.n)]
    normal = normal_theory_lcb(sample, args.alpha) if sample.n >= 2 else None

    print(f"n = {sample.n}   mean = {_fmt(sample.mean)}   sd = {_fmt(sample.sd)}   "
          f"confidence = {100 * (1 - args.alpha):g}%")
    print(f"{'method':<16} {'bound':>12} {'% of mean':>10} {'lambda':>10} "
          f"{'coverage':>10} {'std err':>9}")
    rows = []
    for rep in reports:
        cal = rep.calibration
        pct = 100.0 * rep.bound / rep.sample_mean if rep.sample_mean > 0 else math.nan
        print(f"{rep.method.value:<16} {_fmt(rep.bound):>12} {_fmt(pct, 1):>10} "
              f"{_fmt(cal.lambda_star):>10} {_fmt(cal.achieved_p.p, 4):>10} "
              f"{_fmt(cal.achieved_p.std_err, 5):>9}")
        rows.append([rep.method.value, str(sample.n), repr(args.alpha),
                     repr(rep.bound), repr(cal.lambda_star),
                     repr(cal.achieved_p.p), repr(cal.achieved_p.std_err),
                     str(args.replicates), str(args.seed),
                     repr(rep.sample_mean), repr(rep.sample_sd)])
    if normal is not None:
        pct = 100.0 * normal.bound / normal.sample_mean if normal.sample_mean > 0 else math.nan
        print(f"{normal.method.value:<16} {_fmt(normal.bound):>12} {_fmt(pct, 1):>10} "
              f"{'-':>10} {'-':>10} {'-':>9}")
        rows.append([normal.method.value, str(sample.n), repr(args.alpha),
                     repr(normal.bound), "", "", "", "", "",
                     repr(normal.sample_mean), repr(normal.sample_sd)])
    if args.csv:
        _write_csv(args.csv,
                   ["method", "n", "alpha", "bound", "lambda", "achieved_p",
                    "achieved_se", "replicates", "seed", "sample_mean", "sample_sd"],
                   rows)
        print(f"wrote {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# calibrate
# ---------------------------------------------------------------------------

def cmd_calibrate(args) -> int:
    alphas = args.alphas
    rows = []
    print(f"{'family':<8} {'alpha':>8} {'lambda':>12} {'coverage':>10} {'std err':>9}")
    for fam in _families_for(args.family, args.n):
        results = calibrate_many(fam, alphas, args.replicates, args.seed)
        for res in results:
            print(f"{fam.kind:<8} {res.alpha:>8g} {_fmt(res.lambda_star):>12} "
                  f"{_fmt(res.achieved_p.p, 4):>10} {_fmt(res.achieved_p.std_err, 5):>9}")
            rows.append([fam.kind, str(args.n), repr(res.alpha),
                         repr(res.lambda_star), repr(res.achieved_p.p),
                         repr(res.achieved_p.std_err), str(args.replicates),
                         str(args.seed)])
    if args.csv:
        _write_csv(args.csv,
                   ["family", "n", "alpha", "lambda", "achieved_p", "achieved_se",
                    "replicates", "seed"],
                   rows)
        print(f"wrote {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# coverage
# ---------------------------------------------------------------------------

def cmd_coverage(args) -> int:
    u = [float(tok) for tok in args.u.split(",") if tok.strip()]
    if args.n is not None and args.n != len(u):
        raise ValueError(f"--n {args.n} does not match the {len(u)} coordinates of --u")
    if args.exact:
        est = coverage_exact(u)
        print(f"p = {est.p!r}   (exact recursion, n = {len(u)})")
    else:
        est = coverage_mc(u, args.replicates, args.seed)
        print(f"p = {est.p!r} +- {est.std_err:.6f}   "
              f"(monte carlo, {args.replicates} replicates, seed {args.seed})")
    return 0


# ---------------------------------------------------------------------------
# experiment
# ---------------------------------------------------------------------------

def _parse_config(path) -> ExperimentConfig:
    if not os.path.isfile(path):
        raise SystemExit2(f"config file not found: {path}")
    keys = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit2(f"{path}:{line_no}: expected 'key = value'")
            key, _, value = line.partition("=")
            keys[key.strip()] = value.strip()
    known = {"distribution", "tail_index", "values", "n_grid", "alpha",
             "trials", "seed", "replicates"}
    unknown = set(keys) - known
    if unknown:
        raise SystemExit2(f"{path}: unknown config keys: {sorted(unknown)}")
    if "distribution" not in keys:
        raise SystemExit2(f"{path}: missing config key 'distribution'")
    try:
        dist = DistributionSpec(
            kind=keys["distribution"],
            tail_index=float(keys["tail_index"]) if "tail_index" in keys else None,
            values=tuple(float(v) for v in keys["values"].split(",")) if "values" in keys else None,
        )
        return ExperimentConfig(
            distribution=dist,
            n_grid=tuple(int(v) for v in keys["n_grid"].split(",")),
            alpha=float(keys.get("alpha", "0.05")),
            trials=int(keys.get("trials", "10000")),
            seed=int(keys.get("seed", str(DEFAULT_SEED))),
            replicates=int(keys.get("replicates", str(DEFAULT_REPLICATES))),
        )
    except KeyError as exc:
        raise SystemExit2(f"{path}: missing config key {exc.args[0]!r}")


def cmd_experiment(args) -> int:
    if args.asymptotics:
        return _cmd_experiment_asymptotics(args)
    if not args.config:
        raise SystemExit2("--config is required (or use --asymptotics)")
    cfg = _parse_config(args.config)
    result = run_coverage_experiment(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            result.to_csv(fh)
        print(f"wrote {args.out} ({cfg.distribution.label()}, alpha={cfg.alpha:g}, "
              f"trials={cfg.trials})")
    else:
        result.to_csv(sys.stdout)
    return 0


def _cmd_experiment_asymptotics(args) -> int:
    n_grid = [int(tok) for tok in args.n_grid.split(",") if tok.strip()]
    if not n_grid:
        raise SystemExit2("--n-grid must list at least one sample size")
    rows = lambda_asymptotics_check(args.alpha, n_grid, args.replicates, args.seed)
    header = ["n", "lambda", "lambda_scaled", "q_alpha", "rel_deviation"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join([str(row.n), repr(row.lambda_star),
                               repr(row.lambda_scaled), repr(row.q_alpha),
                               repr(row.rel_deviation)]))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# reproduce-lancet
# ---------------------------------------------------------------------------

def cmd_reproduce_lancet(args) -> int:
    sample = lancet_sample()
    alpha = 0.025
    normal = normal_theory_lcb(sample, alpha)
    rep_off = rigorous_lcb(sample, "offset", alpha, args.replicates, args.seed)
    rep_beta = rigorous_lcb(sample, "beta", alpha, args.replicates, args.seed)

    def pct(b):
        return 100.0 * b / sample.mean

    def row(label, published, computed, rounded):
        print(f"{label:<34} {published:>10} {computed:>12} {rounded:>9}")

    print("Case study: Iraq mortality survey cluster death counts "
          f"(n = {sample.n}, 97.5% lower confidence bounds)")
    print(f"note: {CLUSTER_COUNT_PROSE_DISCREPANCY}")
    print(f"note: Monte Carlo calibration with {args.replicates} replicates, "
          f"seed {args.seed}")
    print()
    row("quantity", "published", "computed", "rounded")
    row("sample mean", LANCET_ROUNDED_MEAN, f"{sample.mean:.4f}", f"{sample.mean:.1f}")
    row("sample sd", 8.3, f"{sample.sd:.4f}", f"{sample.sd:.1f}")
    row("normal-theory LCB", 4.0, f"{normal.bound:.4f}", f"{normal.bound:.1f}")
    row("normal-theory LCB, % of mean", 63.0,
        f"{pct(normal.bound):.2f}", f"{pct(normal.bound):.1f}")
    row("offset-family LCB", 2.3, f"{rep_off.bound:.4f}", f"{rep_off.bound:.1f}")
    row("offset-family LCB, % of mean", 36.5,
        f"{pct(rep_off.bound):.2f}", f"{pct(rep_off.bound):.1f}")
    row("beta-family LCB", 2.8, f"{rep_beta.bound:.4f}", f"{rep_beta.bound:.1f}")
    row("beta-family LCB, % of mean", 43.8,
        f"{pct(rep_beta.bound):.2f}", f"{pct(rep_beta.bound):.1f}")
    total_off = rep_off.bound * LANCET_SCALE_FACTOR
    total_beta = rep_beta.bound * LANCET_SCALE_FACTOR
    row("offset total-deaths LCB", 219000, f"{total_off:.0f}",
        f"{round(total_off, -3):.0f}")
    row("beta total-deaths LCB", 263000, f"{total_beta:.0f}",
        f"{round(total_beta, -3):.0f}")
    print()
    print(f"scaling: published point estimate {LANCET_TOTAL_POINT_ESTIMATE} "
          f"total deaths / rounded mean {LANCET_ROUNDED_MEAN} = "
          f"{LANCET_SCALE_FACTOR:.2f} total deaths per unit of cluster mean "
          "(assumes the published linear relationship)")
    lam = rep_off.calibration.lambda_star
    comp = closed_form_comparison(sort_sample(sample), lam)
    literal = "unavailable (indexes past the sample)" if comp.literal is None \
        else f"{comp.literal:.6f}"
    print(f"offset lambda = {lam:.6f}; closed-form shortcut check: "
          f"published form = {literal}, generic evaluator = {comp.generic:.6f}"
          + (" [DIVERGENCE FLAGGED: generic value is authoritative]"
             if comp.literal_diverges else " [agree]"))
    return 0


# ---------------------------------------------------------------------------
# plotdata
# ---------------------------------------------------------------------------

def _plot_curves(sample, alpha, replicates, seed):
    ordered = sort_sample(sample).ordered
    n = ordered.size
    ecdf = []
    for k, x in enumerate(ordered, start=1):
        ecdf.append((float(x), (k - 1) / n))
        ecdf.append((float(x), k / n))
    curves = {"ecdf": ecdf}
    for kind in ("offset", "beta"):
        res = calibrate_many(FamilyKind(kind, n), [alpha], replicates, seed,
                             coverage_check=False)[0]
        curves[kind] = [(float(x), float(v))
                        for x, v in zip(ordered, res.u_star.u)]
    return curves


def _svg_step_path(points, x_of, y_of, start_at_zero_x):
    first_x, first_y = points[0]
    if start_at_zero_x:
        d = [f"M {x_of(0.0):.2f} {y_of(first_y):.2f}",
             f"L {x_of(first_x):.2f} {y_of(first_y):.2f}"]
    else:
        d = [f"M {x_of(first_x):.2f} {y_of(first_y):.2f}"]
    prev_y = first_y
    for x, y in points[1:]:
        if y != prev_y:
            d.append(f"L {x_of(x):.2f} {y_of(prev_y):.2f}")
            d.append(f"L {x_of(x):.2f} {y_of(y):.2f}")
        prev_y = y
    last_x = points[-1][0]
    d.append(f"L {x_of(last_x):.2f} {y_of(prev_y):.2f}")
    return " ".join(d)


def _render_svg(curves, xmax):
    width, height = 720, 480
    ml, mr, mt, mb = 64, 16, 16, 44
    px = width - ml - mr
    py = height - mt - mb

    def x_of(x):
        return ml + px * x / xmax

    def y_of(y):
        return mt + py * (1.0 - y)

    styles = {
        "ecdf": ("black", "none", "empirical CDF"),
        "offset": ("#1f6fb4", "2,4", "offset-family bound"),
        "beta": ("#b44a1f", "9,5", "beta-family bound"),
    }
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{y_of(0)}" x2="{ml + px}" y2="{y_of(0)}" stroke="black"/>',
        f'<line x1="{ml}" y1="{y_of(0)}" x2="{ml}" y2="{y_of(1.02)}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = y_of(frac)
        parts.append(f'<line x1="{ml - 4}" y1="{y}" x2="{ml}" y2="{y}" stroke="black"/>')
        parts.append(f'<text x="{ml - 8}" y="{y + 4:.1f}" font-size="12" '
                     f'text-anchor="end">{frac:g}</text>')
    xtick = max(1.0, round(xmax / 5))
    t = 0.0
    while t <= xmax + 1e-9:
        x = x_of(t)
        parts.append(f'<line x1="{x:.2f}" y1="{y_of(0)}" x2="{x:.2f}" '
                     f'y2="{y_of(0) + 4}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{y_of(0) + 18}" font-size="12" '
                     f'text-anchor="middle">{t:g}</text>')
        t += xtick
    for name in ("ecdf", "offset", "beta"):
        color, dash, _ = styles[name]
        dash_attr = f' stroke-dasharray="{dash}"' if dash != "none" else ""
        path = _svg_step_path(curves[name], x_of, y_of, start_at_zero_x=True)
        parts.append(f'<path d="{path}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"{dash_attr}/>')
    for i, name in enumerate(("ecdf", "offset", "beta")):
        color, dash, label = styles[name]
        y = mt + 18 + 20 * i
        dash_attr = f' stroke-dasharray="{dash}"' if dash != "none" else ""
        parts.append(f'<line x1="{ml + 16}" y1="{y}" x2="{ml + 56}" y2="{y}" '
                     f'stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        parts.append(f'<text x="{ml + 64}" y="{y + 4}" font-size="13">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plotdata(args) -> int:
    if not args.out:
        raise SystemExit2("--out prefix must not be empty")
    sample = _read_sample(args)
    curves = _plot_curves(sample, args.alpha, args.replicates, args.seed)
    if args.format == "csv":
        path = args.out + ".csv"
        rows = []
        for name in ("ecdf", "offset", "beta"):
            rows.extend([name, repr(x), repr(y)] for x, y in curves[name])
        _write_csv(path, ["curve", "x", "y"], rows)
    else:
        path = args.out + ".svg"
        xmax = max(x for x, _ in curves["ecdf"]) * 1.05
        if xmax <= 0:
            xmax = 1.0
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_render_svg(curves, xmax))
    print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    benchmark.run_benchmarks(n_values=args.n, replicates=args.replicates)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _alpha_list(text):
    return [float(tok) for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanlcb",
        description="Rigorous finite-sample lower confidence bounds for the "
                    "mean of a positive random variable.",
        epilog="exit codes: 0 success, 1 computation/data error, 2 usage/IO error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_family=True):
        p.add_argument("--alpha", type=float, default=0.025,
                       help="miss probability; confidence is 1 - alpha (default 0.025)")
        if with_family:
            p.add_argument("--family", choices=("offset", "beta", "both"),
                           default="both")
        p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("lcb", help="rigorous LCB for the mean of a data file")
    p.add_argument("--file", help="input data file")
    p.add_argument("--stdin", action="store_true", help="read data from stdin")
    add_common(p)
    p.add_argument("--csv", help="also write results as CSV to this path")
    p.set_defaults(func=cmd_lcb)

    p = sub.add_parser("calibrate", help="calibrate family parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=("offset", "beta", "both"), default="offset")
    p.add_argument("--alphas", type=_alpha_list, default=[0.025],
                   help="comma-separated list, e.g. 0.01,0.025,0.05")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("coverage", help="joint coverage probability of a bound vector")
    p.add_argument("--u", required=True, help="comma-separated coordinates")
    p.add_argument("--n", type=int, help="optional sanity check on the length")
    p.add_argument("--exact", action="store_true", help="exact recursion (small n)")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("experiment", help="coverage experiment from a config file")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--asymptotics", action="store_true",
                   help="instead: compare offset-family calibration with its "
                        "Brownian-bridge limit over --n-grid")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--n-grid", default="500,2000",
                   help="comma-separated sample sizes (asymptotics mode)")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("reproduce-lancet",
                       help="reproduce the published survey case-study numbers")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_reproduce_lancet)

    p = sub.add_parser("plotdata",
                       help="emit ECDF and confidence-region boundary curves")
    p.add_argument("--file", help="input data file")
    p.add_argument("--stdin", action="store_true")
    p.add_argument("--alpha", type=float, default=0.025)
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("bench", help="compare numba and numpy kernel backends")
    p.add_argument("--n", type=int, nargs="*", default=None)
    p.add_argument("--replicates", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, IsADirectoryError, PermissionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Benchmark the numba kernels against the pure-numpy fallback.

Run as ``meanlcb bench`` or ``python -m meanlcb.benchmark``. Timings use the
best of three repetitions after a warmup call (which also absorbs numba
compilation).
"""

import time

import numpy as np

from . import _kernels


def _time_best(fn, repeats=2):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _kernel_calls(n, reps):
    u = np.minimum(1.0, np.arange(1, n + 1) / (n + 1) + 0.15)
    return [
        ("offset_pivots", lambda: _kernels.offset_pivots(1, _kernels.PURPOSE_PIVOT, n, reps)),
        ("beta_pivots", lambda: _kernels.beta_pivots(1, _kernels.PURPOSE_PIVOT, n, reps)),
        ("count_all_below", lambda: _kernels.count_all_below(1, _kernels.PURPOSE_COVERAGE, u, reps)),
    ]


def run_benchmarks(n_values=None, replicates=None) -> None:
    n_values = n_values or [47, 200]
    replicates = replicates or 20_000
    backends = _kernels.available_backends()
    original = _kernels.active_backend()
    print(f"backends available: {', '.join(backends)}   "
          f"(replicates = {replicates})")
    try:
        for n in n_values:
            print(f"\nn = {n}")
            print(f"{'kernel':<18} " + " ".join(f"{b + ' [s]':>12}" for b in backends)
                  + ("   speedup" if len(backends) == 2 else ""))
            names = [name for name, _ in _kernel_calls(n, replicates)]
            timings = {name: {} for name in names}
            for backend in backends:
                _kernels.set_backend(backend)
                for name, call in _kernel_calls(n, replicates):
                    call()  # warmup / compile
                    timings[name][backend] = _time_best(call)
            for name in names:
                row = f"{name:<18} " + " ".join(
                    f"{timings[name][b]:>12.4f}" for b in backends)
                if len(backends) == 2:
                    ratio = timings[name]["numpy"] / max(timings[name]["numba"], 1e-12)
                    row += f"   {ratio:>6.1f}x"
                print(row)
    finally:
        _kernels.set_backend(original)


def main() -> None:
    run_benchmarks()


if __name__ == "__main__":
    main()

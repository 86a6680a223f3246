"""Kernel dispatch: numba-accelerated hot loops with a pure-numpy fallback.

The backend is chosen once at import from the ``MEANLCB_BACKEND`` environment
variable (``auto``, ``numba`` or ``numpy``; default ``auto``) and can be
switched at runtime with :func:`set_backend`. Both backends consume the same
counter-based uniform streams, so any Monte Carlo result is a pure function
of (seed, purpose, replicate count, n) regardless of backend threading or
batching.
"""

import os

import numpy as np

from . import _numpy
from ._scalar import (betainc_scalar, beta_ucb_scalar, mix64, stream_base,
                      uniform_row_py)

try:
    from . import _numba
    _HAVE_NUMBA = True
    _NUMBA_IMPORT_ERROR = None
except ImportError as exc:  # pragma: no cover - numba is a regular dependency
    _numba = None
    _HAVE_NUMBA = False
    _NUMBA_IMPORT_ERROR = exc

# Stream purposes keep the pivot simulation, coverage checks and experiment
# sampling on disjoint substreams of the same user seed.
PURPOSE_PIVOT = 0xA0000001
PURPOSE_COVERAGE = 0xB0000001
PURPOSE_EXPERIMENT = 0xE0000000

ENV_VAR = "MEANLCB_BACKEND"

_active_name = None


def available_backends():
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def set_backend(name):
    """Select 'numba', 'numpy' or 'auto'; returns the resolved backend name."""
    global _active_name
    name = (name or "auto").lower()
    if name == "auto":
        name = "numba" if _HAVE_NUMBA else "numpy"
    if name == "numba" and not _HAVE_NUMBA:
        raise RuntimeError(f"numba backend requested but unavailable: {_NUMBA_IMPORT_ERROR}")
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected 'numba', 'numpy' or 'auto'")
    _active_name = name
    return name


def active_backend():
    return _active_name


set_backend(os.environ.get(ENV_VAR, "auto"))


def _impl():
    return _numba if _active_name == "numba" else _numpy


def experiment_purpose(n):
    return PURPOSE_EXPERIMENT + int(n)


def offset_pivots(seed, purpose, n, reps):
    base = np.uint64(stream_base(seed, purpose))
    return _impl().offset_pivots(base, int(n), int(reps))


def beta_pivots(seed, purpose, n, reps):
    base = np.uint64(stream_base(seed, purpose))
    return _impl().beta_pivots(base, int(n), int(reps))


def count_all_below(seed, purpose, u, reps):
    base = np.uint64(stream_base(seed, purpose))
    u = np.ascontiguousarray(u, dtype=np.float64)
    return int(_impl().count_all_below(base, u, int(reps)))


def uniform_block(seed, purpose, rows, n):
    # Generation is memory-bound; the vectorized implementation serves both
    # backends (streams are identical by construction).
    base = np.uint64(stream_base(seed, purpose))
    return _numpy.uniform_block(base, int(rows), int(n))


def scalar_betainc(x, a, b):
    if _active_name == "numba":
        return _numba.betainc_jit(x, a, b)
    return betainc_scalar(x, a, b)


def scalar_beta_ucb(a, b, p):
    if _active_name == "numba":
        return _numba.beta_ucb_jit(a, b, p)
    return beta_ucb_scalar(a, b, p)


def betainc_block(x, a, b):
    return _impl().betainc_block(x, a, b)

"""Numba backend: njit kernels over the shared scalar cores.

Importing this module requires numba but does not trigger compilation;
kernels compile on first call and cache to disk.
"""

import numpy as np
from numba import njit, prange

from ._scalar import betainc_scalar, beta_ucb_scalar

_U64 = np.uint64
_G = _U64(0x9E3779B97F4A7C15)
_M1 = _U64(0xBF58476D1CE4E5B9)
_M2 = _U64(0x94D049BB133111EB)
_S30 = _U64(30)
_S27 = _U64(27)
_S31 = _U64(31)
_S11 = _U64(11)
_UNIT = 2.0 ** -53


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def _uniform_at(key, i):
    bits = _mix64(key + _G * _U64(i + 1))
    return (np.float64(bits >> _S11) + 0.5) * _UNIT


@njit(cache=True)
def uniform_row(base, rep, n):
    key = _mix64(base + _G * _U64(rep + 1))
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = _uniform_at(key, i)
    return out


@njit(cache=True, parallel=True)
def offset_pivots(base, n, reps):
    np1 = n + 1.0
    out = np.empty(reps, dtype=np.float64)
    for r in prange(reps):
        key = _mix64(base + _G * _U64(r + 1))
        buf = np.empty(n, dtype=np.float64)
        for i in range(n):
            buf[i] = _uniform_at(key, i)
        buf.sort()
        best = -1.0e308
        for i in range(n):
            v = buf[i] - (i + 1.0) / np1
            if v > best:
                best = v
        if best < 0.0:
            best = 0.0
        elif best > 1.0:
            best = 1.0
        out[r] = best
    return out


@njit(cache=True, parallel=True)
def beta_pivots(base, n, reps):
    out = np.empty(reps, dtype=np.float64)
    for r in prange(reps):
        key = _mix64(base + _G * _U64(r + 1))
        buf = np.empty(n, dtype=np.float64)
        for i in range(n):
            buf[i] = _uniform_at(key, i)
        buf.sort()
        best = -1.0
        for i in range(n):
            v = betainc_scalar(buf[i], i + 1.0, float(n - i))
            if v > best:
                best = v
        out[r] = best
    return out


@njit(cache=True, parallel=True)
def count_all_below(base, u, reps):
    n = u.size
    total = 0
    for r in prange(reps):
        key = _mix64(base + _G * _U64(r + 1))
        buf = np.empty(n, dtype=np.float64)
        for i in range(n):
            buf[i] = _uniform_at(key, i)
        buf.sort()
        ok = True
        for i in range(n):
            if buf[i] > u[i]:
                ok = False
                break
        if ok:
            total += 1
    return total


betainc_jit = njit(cache=True)(betainc_scalar)
beta_ucb_jit = njit(cache=True)(beta_ucb_scalar)


@njit(cache=True)
def _betainc_flat(x, a, b, out):
    for i in range(x.size):
        out[i] = betainc_jit(x[i], a[i], b[i])


def betainc_block(x, a, b):
    """Elementwise I(x; a, b) via the jitted scalar core."""
    x, a, b = np.broadcast_arrays(np.asarray(x, dtype=np.float64),
                                  np.asarray(a, dtype=np.float64),
                                  np.asarray(b, dtype=np.float64))
    out = np.empty(x.size, dtype=np.float64)
    _betainc_flat(np.ascontiguousarray(x).ravel(),
                  np.ascontiguousarray(a).ravel(),
                  np.ascontiguousarray(b).ravel(), out)
    return out.reshape(x.shape)

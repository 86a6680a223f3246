"""Pure-numpy backend: batched, vectorized mirrors of the scalar cores.

Every function reproduces the scalar arithmetic operation-for-operation
(masked updates stand in for early loop exits), so results match the numba
backend to the last few ulps and are independent of the batch size.
"""

import math

import numpy as np

from . import _scalar

_U64 = np.uint64
_G = _U64(_scalar.GOLDEN)
_M1 = _U64(_scalar.MIX_M1)
_M2 = _U64(_scalar.MIX_M2)
_UNIT = _scalar.UNIT_SCALE

_BATCH_ELEMENTS = 1 << 18
_CF_EPS = _scalar._CF_EPS
_CF_MAXIT = _scalar._CF_MAXIT
_CF_TINY = _scalar._CF_TINY
_EXP_UNDERFLOW = _scalar._EXP_UNDERFLOW


def _mix64(z):
    z = (z ^ (z >> _U64(30))) * _M1
    z = (z ^ (z >> _U64(27))) * _M2
    return z ^ (z >> _U64(31))


def uniform_block(base, rows, n, row0=0):
    """Uniforms for replicates row0 .. row0+rows-1, one replicate per row."""
    with np.errstate(over="ignore"):
        reps = np.arange(row0 + 1, row0 + rows + 1, dtype=np.uint64)
        keys = _mix64(_U64(base) + _G * reps)
        idx = np.arange(1, n + 1, dtype=np.uint64)
        bits = _mix64(keys[:, None] + _G * idx[None, :])
    return ((bits >> _U64(11)).astype(np.float64) + 0.5) * _UNIT


def uniform_row(base, rep, n):
    return uniform_block(base, 1, n, row0=rep)[0]


def _batch_rows(n):
    return max(1, _BATCH_ELEMENTS // max(n, 1))


def offset_pivots(base, n, reps):
    grid = np.arange(1, n + 1, dtype=np.float64) / (n + 1)
    out = np.empty(reps, dtype=np.float64)
    step = _batch_rows(n)
    for r0 in range(0, reps, step):
        rows = min(step, reps - r0)
        u = np.sort(uniform_block(base, rows, n, row0=r0), axis=1)
        out[r0:r0 + rows] = (u - grid).max(axis=1)
    return np.clip(out, 0.0, 1.0)


def count_all_below(base, u, reps):
    u = np.asarray(u, dtype=np.float64)
    n = u.size
    total = 0
    step = _batch_rows(n)
    for r0 in range(0, reps, step):
        rows = min(step, reps - r0)
        block = np.sort(uniform_block(base, rows, n, row0=r0), axis=1)
        total += int(np.count_nonzero((block <= u).all(axis=1)))
    return total


# ---------------------------------------------------------------------------
# Vectorized incomplete beta (mirror of _scalar.betainc_scalar).
# ---------------------------------------------------------------------------

def _phi_vec(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    small = z < 16.0
    if small.any():
        out[small] = [_scalar._phi(v) for v in z[small]]
    big = ~small
    if big.any():
        zb = z[big]
        r = 1.0 / (zb * zb)
        out[big] = ((((-1.0 / 1680.0) * r + 1.0 / 1260.0) * r - 1.0 / 360.0) * r
                    + 1.0 / 12.0) / zb
    return out


def _bd0_vec(k, m):
    k, m = np.broadcast_arrays(k, m)
    out = k * np.log(k / m) + m - k
    near = np.abs(k - m) < 0.1 * (k + m)
    if near.any():
        kn = k[near]
        mn = m[near]
        v = (kn - mn) / (kn + mn)
        s = (kn - mn) * v
        ej = 2.0 * kn * v
        v2 = v * v
        active = np.ones(s.shape, dtype=bool)
        j = 1
        while active.any():
            ej = ej * v2
            s1 = s + ej / (2 * j + 1)
            changed = (s1 != s) & active
            s = np.where(changed, s1, s)
            active = changed
            j += 1
        out[near] = s
    return out


def _betacf_vec(a, b, x):
    # Converged elements are compacted away each iteration; the per-element
    # arithmetic is unchanged, so values match the scalar loop exactly.
    shape = x.shape
    a = np.broadcast_to(a, shape).ravel()
    b = np.broadcast_to(b, shape).ravel()
    x = x.ravel()
    out = np.empty(x.size, dtype=np.float64)
    idx = np.arange(x.size)
    c = np.ones_like(x)
    d = 1.0 - (a + b) * x / (a + 1.0)
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((a - 1.0 + m2) * (a + m2))
        dn = 1.0 + aa * d
        dn = np.where(np.abs(dn) < _CF_TINY, _CF_TINY, dn)
        cn = 1.0 + aa / c
        cn = np.where(np.abs(cn) < _CF_TINY, _CF_TINY, cn)
        dn = 1.0 / dn
        hn = h * dn * cn
        aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + 1.0 + m2))
        d2 = 1.0 + aa * dn
        d2 = np.where(np.abs(d2) < _CF_TINY, _CF_TINY, d2)
        c2 = 1.0 + aa / cn
        c2 = np.where(np.abs(c2) < _CF_TINY, _CF_TINY, c2)
        d2 = 1.0 / d2
        de = d2 * c2
        hn = hn * de
        conv = np.abs(de - 1.0) <= _CF_EPS
        if conv.any():
            out[idx[conv]] = hn[conv]
            keep = ~conv
            if not keep.any():
                return out.reshape(shape)
            idx = idx[keep]
            a, b, x = a[keep], b[keep], x[keep]
            c, d, h = c2[keep], d2[keep], hn[keep]
        else:
            c, d, h = c2, d2, hn
    raise RuntimeError("incomplete beta continued fraction did not converge")


def _betainc_core_vec(x, a, b, phi_a, phi_b, phi_s):
    """I(x; a, b) elementwise; a, b and their phi values broadcast against x."""
    x, a, b, phi_a, phi_b = np.broadcast_arrays(x, a, b, phi_a, phi_b)
    x = x.astype(np.float64, copy=True)
    edge_lo = x <= 0.0
    edge_hi = x >= 1.0
    inner = np.clip(x, 0.25, 0.75)  # placeholder values on edge elements only
    x = np.where(edge_lo | edge_hi, inner, x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        swap = ~(x < (a + 1.0) / (a + b + 2.0))
        xx = np.where(swap, 1.0 - x, x)
        aa = np.where(swap, b, a)
        bb = np.where(swap, a, b)
        pa = np.where(swap, phi_b, phi_a)
        pb = np.where(swap, phi_a, phi_b)
        s = aa + bb
        lf = (-_bd0_vec(aa, s * xx) - _bd0_vec(bb, s * (1.0 - xx))
              + 0.5 * np.log(aa * bb / (2.0 * math.pi * s))
              + phi_s - pa - pb)
        f = np.where(lf < _EXP_UNDERFLOW, 0.0,
                     np.exp(np.maximum(lf, _EXP_UNDERFLOW)))
        v = f * _betacf_vec(aa, bb, xx) / aa
    out = np.where(swap, 1.0 - v, v)
    out = np.where(edge_lo, 0.0, out)
    out = np.where(edge_hi, 1.0, out)
    return out


def betainc_block(x, a, b):
    """General elementwise I(x; a, b) on arrays (used by tests and benchmarks)."""
    x, a, b = np.broadcast_arrays(np.asarray(x, dtype=np.float64),
                                  np.asarray(a, dtype=np.float64),
                                  np.asarray(b, dtype=np.float64))
    shape = x.shape
    x, a, b = np.atleast_1d(x), np.atleast_1d(a), np.atleast_1d(b)
    out = _betainc_core_vec(x, a, b, _phi_vec(a), _phi_vec(b), _phi_vec(a + b))
    return out.reshape(shape)


def beta_pivots(base, n, reps):
    a = np.arange(1, n + 1, dtype=np.float64)
    b = n + 1.0 - a
    phi_tab = np.array([0.0] + [_scalar._phi(float(v)) for v in range(1, n + 2)])
    phi_a = phi_tab[np.arange(1, n + 1)]
    phi_b = phi_tab[n + 1 - np.arange(1, n + 1)]
    phi_s = phi_tab[n + 1]
    out = np.empty(reps, dtype=np.float64)
    step = _batch_rows(n)
    for r0 in range(0, reps, step):
        rows = min(step, reps - r0)
        u = np.sort(uniform_block(base, rows, n, row0=r0), axis=1)
        vals = _betainc_core_vec(u, a, b, phi_a, phi_b, phi_s)
        out[r0:r0 + rows] = vals.max(axis=1)
    return out

"""Scalar numeric cores shared by every backend.

The incomplete-beta chain below is written in plain Python with `math` only,
so the numba backend can compile the very same functions (`register_jitable`)
while the numpy backend and the public scalar API call them directly.
"""

import math

try:
    from numba.extending import register_jitable
except ImportError:  # pragma: no cover - numba is a regular dependency
    def register_jitable(func=None, **kwargs):
        if func is None:
            return lambda f: f
        return func

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_CF_EPS = 3e-16
_CF_MAXIT = 5000
_CF_TINY = 1e-300
_EXP_UNDERFLOW = -745.0


@register_jitable
def _phi(z):
    # lgamma(z) - [(z - 0.5) ln z - z + 0.5 ln 2pi], the Stirling remainder.
    # Direct difference is safe below the series cutoff (all terms are O(1)).
    if z < 16.0:
        return math.lgamma(z) - ((z - 0.5) * math.log(z) - z + _HALF_LOG_2PI)
    r = 1.0 / (z * z)
    return ((((-1.0 / 1680.0) * r + 1.0 / 1260.0) * r - 1.0 / 360.0) * r + 1.0 / 12.0) / z


@register_jitable
def _bd0(k, m):
    # k ln(k/m) + m - k without cancellation for k close to m.
    if abs(k - m) < 0.1 * (k + m):
        v = (k - m) / (k + m)
        s = (k - m) * v
        ej = 2.0 * k * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
            j += 1
    return k * math.log(k / m) + m - k


@register_jitable
def _log_front(a, b, x):
    # ln(x^a (1-x)^b / B(a, b)) via Stirling remainders; avoids the huge
    # lgamma cancellation that caps plain log-space evaluation near 1e-10.
    s = a + b
    return (-_bd0(a, s * x) - _bd0(b, s * (1.0 - x))
            + 0.5 * math.log(a * b / (2.0 * math.pi * s))
            + _phi(s) - _phi(a) - _phi(b))


@register_jitable
def _betacf(a, b, x):
    # Modified Lentz continued fraction for the lower incomplete beta.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        de = d * c
        h *= de
        if abs(de - 1.0) <= _CF_EPS:
            return h
    raise RuntimeError("incomplete beta continued fraction did not converge")


@register_jitable
def _betainc_lower(x, a, b):
    lf = _log_front(a, b, x)
    if lf < _EXP_UNDERFLOW:
        return 0.0
    return math.exp(lf) * _betacf(a, b, x) / a


@register_jitable
def betainc_scalar(x, a, b):
    """Regularized incomplete beta I(x; a, b) for a, b >= 1."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        return _betainc_lower(x, a, b)
    return 1.0 - _betainc_lower(1.0 - x, b, a)


@register_jitable
def beta_ucb_scalar(a, b, p):
    """Beta(a, b) quantile at level p by fixed-depth bisection.

    Plain bisection (64 halvings, no Newton polishing) keeps the output
    monotone in stochastically ordered parameters, which the family
    construction relies on.
    """
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    lo = 0.0
    hi = 1.0
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if betainc_scalar(mid, a, b) <= p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Counter-based uniform stream (python-int flavour).
#
# Every uniform is a pure function of (seed, purpose, replicate, position):
# a splitmix64 finalizer applied to a keyed counter. The numpy and numba
# backends re-express the identical integer arithmetic on uint64, so all
# three flavours produce bit-identical streams, replicate by replicate,
# independent of batching or thread count.
# ---------------------------------------------------------------------------

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX_M1 = 0xBF58476D1CE4E5B9
MIX_M2 = 0x94D049BB133111EB
UNIT_SCALE = 2.0 ** -53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_M1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_M2) & MASK64
    return z ^ (z >> 31)


def stream_base(seed: int, purpose: int) -> int:
    return mix64(mix64(seed & MASK64) + (GOLDEN * (purpose & MASK64) & MASK64))


def replicate_key(base: int, rep: int) -> int:
    return mix64(base + (GOLDEN * ((rep + 1) & MASK64) & MASK64))


def uniform_at(key: int, i: int) -> float:
    bits = mix64(key + (GOLDEN * ((i + 1) & MASK64) & MASK64))
    return ((bits >> 11) + 0.5) * UNIT_SCALE


def uniform_row_py(base: int, rep: int, n: int) -> list:
    key = replicate_key(base, rep)
    return [uniform_at(key, i) for i in range(n)]

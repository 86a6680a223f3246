"""Independent oracles used to freeze expected values.

Each oracle takes a route disjoint from the implementation it checks:
coverage by direct nested quadrature of the ordered-simplex volume, the
incomplete beta by exact binomial tail sums and by high-precision
quadrature, pivots by bisection on the raw membership predicate.
"""

import math

import numpy as np

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def brute_force_coverage(u):
    """P(U_(1) <= u_1, ..., U_(n) <= u_n) by nested Gauss-Legendre quadrature.

    The ordered-region volume integrand is polynomial for nondecreasing u,
    so 24-node quadrature per level is exact to rounding for n <= 4.
    """
    u = np.asarray(u, dtype=float)

    def vol(lo, depth):
        hi = u[depth]
        if hi <= lo:
            return 0.0
        t = 0.5 * (hi - lo) * _GL_NODES + 0.5 * (hi + lo)
        w = 0.5 * (hi - lo) * _GL_WEIGHTS
        if depth == u.size - 1:
            return float(np.sum(w))
        return float(sum(wi * vol(ti, depth + 1) for ti, wi in zip(t, w)))

    return math.factorial(u.size) * vol(0.0, 0)


def binomial_tail(n, i, x):
    """P(Binomial(n, x) >= i) by direct summation with exact combinatorics.

    Equals the regularized incomplete beta I(x; i, n - i + 1).
    """
    if x <= 0.0:
        return 0.0 if i > 0 else 1.0
    if x >= 1.0:
        return 1.0
    total = 0.0
    for j in range(i, n + 1):
        total += math.comb(n, j) * x ** j * (1.0 - x) ** (n - j)
    return min(total, 1.0)


def pivot_by_bisection(sorted_uniforms, vector_of_lambda, iters=64):
    """Smallest lam in [0, 1] whose bound vector admits the sorted sample."""
    arr = np.asarray(sorted_uniforms, dtype=float)

    def member(lam):
        return bool(np.all(arr <= vector_of_lambda(lam)))

    if member(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    return hi


def mp_betainc(a, b, x, dps=50):
    """High-precision I(x; a, b) by quadrature of the beta density."""
    import mpmath as mp

    with mp.workdps(dps):
        aa, bb, xx = mp.mpf(a), mp.mpf(b), mp.mpf(x)
        if xx <= 0:
            return 0.0
        if xx >= 1:
            return 1.0
        mean = aa / (aa + bb)
        sd = mp.sqrt(aa * bb / ((aa + bb) ** 2 * (aa + bb + 1)))
        pts = sorted({float(p) for p in
                      (mean - 12 * sd, mean - 3 * sd, mean, mean + 3 * sd, mean + 12 * sd)
                      if 0 < p < x})
        path = [mp.mpf(0)] + [mp.mpf(p) for p in pts] + [xx]
        lb = mp.loggamma(aa) + mp.loggamma(bb) - mp.loggamma(aa + bb)

        def dens(t):
            if t <= 0 or t >= 1:
                return mp.mpf(0)
            return mp.e ** ((aa - 1) * mp.log(t) + (bb - 1) * mp.log1p(-t) - lb)

        return float(mp.quad(dens, path))


def mp_normal_quantile(p, dps=40):
    import mpmath as mp

    with mp.workdps(dps):
        return float(mp.sqrt(2) * mp.erfinv(2 * mp.mpf(p) - 1))

"""Pure-numpy reference kernels for hyperboloid cloud operations.

These are the fallback implementations behind the numba-jitted mirrors in
``accelerated``. Arrays are float64; points are rows of hyperboloid
coordinates (n spacelike components followed by one timelike component).

Kept deliberately branch-identical to the jitted versions so the two
backends agree to machine precision.
"""

import numpy as np

# series/guard thresholds shared with the jitted mirror
_EXP_SERIES = 1e-4     # tangent norm below which exp uses its Taylor series
_LOG_SERIES = 1e-8     # (-<x,y> - 1) below which the log coefficient uses its series
_GEO_DEGENERATE = 1e-12


def mink_inner_many(points, x):
    """Minkowski inner product of x with each row of points."""
    return points[:, :-1] @ x[:-1] - points[:, -1] * x[-1]


def dist_many(points, x):
    """Geodesic distances from x to each row of points."""
    s = -mink_inner_many(points, x)
    return np.arccosh(np.maximum(s, 1.0))


def log_many(x, points):
    """log_x(q) for each row q of points, as rows of tangent vectors at x."""
    m = mink_inner_many(points, x)          # <x, q>_M, at most -1
    s = np.maximum(-m, 1.0)
    u = s - 1.0
    d = np.arccosh(s)
    coef = np.where(u < _LOG_SERIES,
                    1.0 - u / 3.0,
                    d / np.sqrt(np.maximum(s * s - 1.0, np.finfo(float).tiny)))
    return coef[:, None] * (points + m[:, None] * x[None, :])


def exp_many(x, tangents):
    """exp_x(v) for each row v of tangents, renormalized onto the sheet."""
    sq = (tangents[:, :-1] ** 2).sum(axis=1) - tangents[:, -1] ** 2
    nv = np.sqrt(np.maximum(sq, 0.0))
    small = nv < _EXP_SERIES
    nv2 = nv * nv
    ch = np.where(small, 1.0 + nv2 / 2.0 + nv2 * nv2 / 24.0, np.cosh(nv))
    shc = np.where(small, 1.0 + nv2 / 6.0 + nv2 * nv2 / 120.0,
                   np.sinh(nv) / np.where(small, 1.0, nv))
    out = ch[:, None] * x[None, :] + shc[:, None] * tangents
    # Pull each row back onto the sheet by reconstructing the time
    # coordinate from the space part (exact at every scale); dividing by
    # the Minkowski norm instead cancels catastrophically for long steps.
    out[:, -1] = np.sqrt(1.0 + (out[:, :-1] ** 2).sum(axis=1))
    return out


def cppa_cycle(points, x, t):
    """One cycle of sequential geodesic pulls x <- gamma(x, q_i; t).

    Each data point drags the running iterate a fraction t of the way along
    the connecting geodesic, in row order. Returns the new iterate.
    """
    out = x.copy()
    n = out.shape[0] - 1
    for i in range(points.shape[0]):
        q = points[i]
        s = -(out[:n] @ q[:n] - out[n] * q[n])
        if s < 1.0:
            s = 1.0
        d = np.arccosh(s)
        if d > _GEO_DEGENERATE:
            den = np.sqrt(s * s - 1.0)
            b = np.sinh(t * d) / den
            a = np.cosh(t * d) - s * b
            out = a * out + b * q
            out[n] = np.sqrt(1.0 + (out[:n] ** 2).sum())
    return out


def l1_prox_fp(x, mu_eff, tol, max_iter):
    """Fixed-point iteration for the l1 prox on the hyperboloid.

    Returns (y, t_star, iterations, converged). t is the shrink amount;
    the update is t <- mu_eff * sinh(dist(x, y_t)) / dist(x, y_t) with
    y_t the normalized componentwise shrink of x by t.
    """
    n = x.shape[0] - 1
    t = mu_eff
    y = x.copy()
    it = 0
    converged = False
    for it in range(1, max_iter + 1):
        y = _shrink_normalize(x, t, n)
        s = -(x[:n] @ y[:n] - x[n] * y[n])
        if s < 1.0:
            s = 1.0
        d = np.arccosh(s)
        if d > _GEO_DEGENERATE:
            t_new = mu_eff * np.sinh(d) / d
        else:
            t_new = mu_eff
        done = abs(t_new - t) < tol
        t = t_new
        if done:
            converged = True
            break
    y = _shrink_normalize(x, t, n)
    return y, t, it, converged


def _shrink_normalize(x, t, n):
    p = np.empty_like(x)
    for i in range(n):
        a = abs(x[i]) - t
        if a > 0.0:
            p[i] = a if x[i] > 0.0 else -a
        else:
            p[i] = 0.0
    p[n] = x[n] + t
    nrm = np.sqrt(p[n] ** 2 - (p[:n] ** 2).sum())
    return p / nrm

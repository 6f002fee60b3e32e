"""Numba-jitted mirrors of the reference kernels.

Same guards and series thresholds as ``reference``; loops written out so the
jit compiles them to tight machine code. cache=True persists compilation
across processes.
"""

import numpy as np
from numba import njit

_EXP_SERIES = 1e-4
_LOG_SERIES = 1e-8
_GEO_DEGENERATE = 1e-12


@njit(cache=True)
def dist_many(points, x):
    n = x.shape[0] - 1
    out = np.empty(points.shape[0])
    for i in range(points.shape[0]):
        s = 0.0
        for j in range(n):
            s += points[i, j] * x[j]
        s = -(s - points[i, n] * x[n])
        if s < 1.0:
            s = 1.0
        out[i] = np.arccosh(s)
    return out


@njit(cache=True)
def log_many(x, points):
    n = x.shape[0] - 1
    out = np.empty_like(points)
    for i in range(points.shape[0]):
        m = 0.0
        for j in range(n):
            m += points[i, j] * x[j]
        m = m - points[i, n] * x[n]
        s = -m
        if s < 1.0:
            s = 1.0
        u = s - 1.0
        if u < _LOG_SERIES:
            coef = 1.0 - u / 3.0
        else:
            coef = np.arccosh(s) / np.sqrt(s * s - 1.0)
        for j in range(n + 1):
            out[i, j] = coef * (points[i, j] + m * x[j])
    return out


@njit(cache=True)
def exp_many(x, tangents):
    n = x.shape[0] - 1
    out = np.empty_like(tangents)
    for i in range(tangents.shape[0]):
        sq = 0.0
        for j in range(n):
            sq += tangents[i, j] * tangents[i, j]
        sq -= tangents[i, n] * tangents[i, n]
        if sq < 0.0:
            sq = 0.0
        nv = np.sqrt(sq)
        nv2 = nv * nv
        if nv < _EXP_SERIES:
            ch = 1.0 + nv2 / 2.0 + nv2 * nv2 / 24.0
            shc = 1.0 + nv2 / 6.0 + nv2 * nv2 / 120.0
        else:
            ch = np.cosh(nv)
            shc = np.sinh(nv) / nv
        for j in range(n + 1):
            out[i, j] = ch * x[j] + shc * tangents[i, j]
        s2 = 0.0
        for j in range(n):
            s2 += out[i, j] * out[i, j]
        out[i, n] = np.sqrt(1.0 + s2)
    return out


@njit(cache=True)
def cppa_cycle(points, x, t):
    n = x.shape[0] - 1
    out = x.copy()
    for i in range(points.shape[0]):
        s = 0.0
        for j in range(n):
            s += out[j] * points[i, j]
        s = -(s - out[n] * points[i, n])
        if s < 1.0:
            s = 1.0
        d = np.arccosh(s)
        if d > _GEO_DEGENERATE:
            den = np.sqrt(s * s - 1.0)
            b = np.sinh(t * d) / den
            a = np.cosh(t * d) - s * b
            for j in range(n + 1):
                out[j] = a * out[j] + b * points[i, j]
            s2 = 0.0
            for j in range(n):
                s2 += out[j] * out[j]
            out[n] = np.sqrt(1.0 + s2)
    return out


@njit(cache=True)
def _shrink_normalize(x, t, n):
    p = np.empty_like(x)
    for i in range(n):
        a = abs(x[i]) - t
        if a > 0.0:
            p[i] = a if x[i] > 0.0 else -a
        else:
            p[i] = 0.0
    p[n] = x[n] + t
    nrm = 0.0
    for i in range(n):
        nrm += p[i] * p[i]
    nrm = np.sqrt(p[n] * p[n] - nrm)
    for i in range(n + 1):
        p[i] /= nrm
    return p


@njit(cache=True)
def l1_prox_fp(x, mu_eff, tol, max_iter):
    n = x.shape[0] - 1
    t = mu_eff
    it = 0
    converged = False
    for it in range(1, max_iter + 1):
        y = _shrink_normalize(x, t, n)
        s = 0.0
        for j in range(n):
            s += x[j] * y[j]
        s = -(s - x[n] * y[n])
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

"""Hyperbolic space in the hyperboloid (Lorentz) model.

Points are vectors x in R^{n+1} on the upper sheet of the two-sheeted
hyperboloid: <x, x>_M = -1 with x[n] > 0, where

    <x, y>_M = sum_{i < n} x_i y_i - x_n y_n

is the Minkowski bilinear form (one timelike coordinate, kept last).
Tangent vectors at x are Minkowski-orthogonal to x and spacelike, so the
restricted form is a genuine Riemannian metric. All sectional curvatures
equal -1.

Closed forms used throughout:

    dist(x, y) = arccosh(-<x, y>_M)
    exp_x(v)   = cosh(|v|) x + sinh(|v|) v / |v|,   |v| = <v, v>_M^(1/2)
    log_x(y)   = dist(x, y) / sqrt(m^2 - 1) * (y + m x),   m = <x, y>_M

with series fallbacks near |v| = 0 and y = x, and a renormalization of
exp results back onto the sheet to stop numerical drift.
"""

import numpy as np

from .base import (COORD_TOL, CurvatureBounds, Geometry, ManifoldPoint,
                   TangentVector)

_LOG_SERIES = 1e-8
_EXP_SERIES = 1e-4


def minkowski_inner(x, y):
    """<x, y>_M on raw coordinate arrays (last coordinate timelike)."""
    return float(x[:-1] @ y[:-1] - x[-1] * y[-1])


class HyperbolicGeometry(Geometry):
    """Hyperbolic n-space, n >= 1, embedded in R^{n+1}."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("hyperbolic dimension must be >= 1")
        self.n = int(n)
        self.curvature = CurvatureBounds(-1.0, -1.0)

    def _key(self):
        return self.n

    def __repr__(self):
        return f"HyperbolicGeometry({self.n})"

    # -- construction / validation ----------------------------------------

    def apex(self) -> ManifoldPoint:
        """The point (0, ..., 0, 1), a convenient origin."""
        c = np.zeros(self.n + 1)
        c[-1] = 1.0
        return ManifoldPoint(self, c)

    def point(self, coords) -> ManifoldPoint:
        c = np.asarray(coords, dtype=float)
        if c.shape != (self.n + 1,):
            raise ValueError(
                f"expected {self.n + 1} coordinates, got shape {c.shape}")
        defect = abs(minkowski_inner(c, c) + 1.0)
        # Relative tolerance: the defect is a difference of numbers of
        # size c[-1]^2, so roundoff alone produces defects of that scale.
        if defect > COORD_TOL * max(1.0, c[-1] * c[-1]):
            raise ValueError(
                f"not on the hyperboloid: |<x,x>_M + 1| = {defect:.3e}")
        if c[-1] <= 0:
            raise ValueError("not on the upper sheet (last coordinate <= 0)")
        return ManifoldPoint(self, c.copy())

    def tangent(self, p: ManifoldPoint, vec) -> TangentVector:
        self._own_point(p)
        v = np.asarray(vec, dtype=float)
        if v.shape != (self.n + 1,):
            raise ValueError(
                f"expected {self.n + 1} components, got shape {v.shape}")
        defect = abs(minkowski_inner(p.coords, v))
        if defect > COORD_TOL * max(1.0, float(np.abs(v).max())):
            raise ValueError(
                f"not tangent at p: |<x,v>_M| = {defect:.3e}")
        return TangentVector(p, v.copy())

    def project_tangent(self, p: ManifoldPoint, vec) -> TangentVector:
        """Minkowski-orthogonal projection of an ambient vector onto T_p."""
        self._own_point(p)
        v = np.asarray(vec, dtype=float)
        return TangentVector(p, v + minkowski_inner(p.coords, v) * p.coords)

    # -- metric ops ---------------------------------------------------------

    def inner(self, p, X, Y) -> float:
        self._own_tangent(X, at=p)
        self._own_tangent(Y, at=p)
        return minkowski_inner(X.vec, Y.vec)

    def dist(self, p, q) -> float:
        self._own_point(p)
        self._own_point(q)
        return self._dist(p.coords, q.coords)

    @staticmethod
    def _dist(x, y) -> float:
        s = -minkowski_inner(x, y)
        return float(np.arccosh(max(s, 1.0)))

    def exp(self, p, X) -> ManifoldPoint:
        self._own_tangent(X, at=p)
        return ManifoldPoint(self, self._exp(p.coords, X.vec))

    @staticmethod
    def _exp(x, v):
        sq = max(minkowski_inner(v, v), 0.0)
        nv = np.sqrt(sq)
        nv2 = nv * nv
        if nv < _EXP_SERIES:
            ch = 1.0 + nv2 / 2.0 + nv2 * nv2 / 24.0
            shc = 1.0 + nv2 / 6.0 + nv2 * nv2 / 120.0
        else:
            ch = np.cosh(nv)
            shc = np.sinh(nv) / nv
        out = ch * x + shc * v
        # Pull the result back onto the sheet; drift is O(eps) per call.
        # The time coordinate is reconstructed from the space part rather
        # than dividing by sqrt(-<out,out>_M): the latter cancels
        # catastrophically (and can go NaN) once the time coordinate is
        # large, while reconstruction is exact at every scale.
        out[-1] = np.sqrt(1.0 + (out[:-1] ** 2).sum())
        return out

    def log(self, p, q) -> TangentVector:
        self._own_point(p)
        self._own_point(q)
        return TangentVector(p, self._log(p.coords, q.coords))

    @staticmethod
    def _log(x, y):
        m = minkowski_inner(y, x)
        s = max(-m, 1.0)
        u = s - 1.0
        if u < _LOG_SERIES:
            coef = 1.0 - u / 3.0
        else:
            coef = np.arccosh(s) / np.sqrt(s * s - 1.0)
        return coef * (y + m * x)

    def transport(self, p: ManifoldPoint, q: ManifoldPoint,
                  X: TangentVector) -> TangentVector:
        """Parallel transport of X from T_p to T_q along the geodesic.

        Closed form v + <q, v>_M / (1 - <p, q>_M) * (p + q); a linear
        isometry between the tangent spaces.
        """
        self._own_point(p)
        self._own_point(q)
        self._own_tangent(X, at=p)
        v = X.vec
        m = minkowski_inner(q.coords, v)
        denom = 1.0 - minkowski_inner(p.coords, q.coords)
        return TangentVector(q, v + (m / denom) * (p.coords + q.coords))

    # -- sampling -----------------------------------------------------------

    def random_tangent(self, p, rng, scale: float = 1.0) -> TangentVector:
        """Projected ambient Gaussian: iid N(0, scale^2) then projection."""
        self._own_point(p)
        z = rng.normal(0.0, scale, size=self.n + 1)
        return self.project_tangent(p, z)

    def random_point(self, rng, scale: float = 1.0,
                     anchor: ManifoldPoint = None) -> ManifoldPoint:
        """exp of a random tangent at anchor (default: the apex)."""
        base = self.apex() if anchor is None else anchor
        return self.exp(base, self.random_tangent(base, rng, scale))


# -- module-level named ops --------------------------------------------------
# Thin functional aliases over the geometry methods, for callers that work
# with one fixed geometry and prefer free functions.

def hyp_dist(geom: HyperbolicGeometry, x, y) -> float:
    return geom.dist(x, y)


def hyp_exp(geom: HyperbolicGeometry, x, v) -> ManifoldPoint:
    return geom.exp(x, v)


def hyp_log(geom: HyperbolicGeometry, x, y) -> TangentVector:
    return geom.log(x, y)


def hyp_sample_gaussian(geom: HyperbolicGeometry, anchor, stddev, rng):
    """exp at anchor of a projected ambient Gaussian tangent.

    Note that at anchors away from the sheet's base point the ambient
    projection inflates the radial component by a factor cosh(distance to
    base); for anchor-independent sampling use hyp_sample_intrinsic.
    """
    return geom.exp(anchor, geom.random_tangent(anchor, rng, scale=stddev))


def hyp_sample_intrinsic(geom: HyperbolicGeometry, anchor, stddev, rng):
    """exp at anchor of a tangent Gaussian that is iid N(0, stddev^2) in
    an orthonormal tangent basis, regardless of where the anchor sits.

    The draw happens at the sheet's base point (where ambient projection
    is exactly an orthonormal-basis Gaussian) and is carried to the
    anchor by parallel transport, which is an isometry. At the base point
    itself this coincides with hyp_sample_gaussian draw for draw.
    """
    base = geom.apex()
    t = geom.random_tangent(base, rng, scale=stddev)
    return geom.exp(anchor, geom.transport(base, anchor, t))

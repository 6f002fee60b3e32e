"""Symmetric positive definite matrices with the affine-invariant metric.

Points are n x n SPD matrices; tangent vectors at p are symmetric matrices
with the metric <X, Y>_p = trace(p^{-1} X p^{-1} Y). Sectional curvatures
lie in [-1/2, 0]. All transcendental matrix functions go through a
symmetric eigendecomposition, with a symmetrization first so roundoff
cannot push the input off the symmetric subspace:

    dist(p, q) = || logm(p^{-1/2} q p^{-1/2}) ||_F
    exp_p(X)   = p^{1/2} expm(p^{-1/2} X p^{-1/2}) p^{1/2}
    log_p(q)   = p^{1/2} logm(p^{-1/2} q p^{-1/2}) p^{1/2}
"""

import numpy as np

from .base import (COORD_TOL, CurvatureBounds, Geometry, ManifoldPoint,
                   TangentVector)

_EIG_FLOOR = 1e-12     # relative eigenvalue floor for positive definiteness


def _sym(a):
    return 0.5 * (a + a.T)


def _eigh_fun(a, fun):
    """fun applied to the eigenvalues of the symmetrized input."""
    w, u = np.linalg.eigh(_sym(a))
    return (u * fun(w)) @ u.T


class SpdGeometry(Geometry):
    """Manifold of n x n symmetric positive definite matrices."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("matrix dimension must be >= 1")
        self.n = int(n)
        self.curvature = CurvatureBounds(-0.5, 0.0)

    def _key(self):
        return self.n

    def __repr__(self):
        return f"SpdGeometry({self.n})"

    @property
    def manifold_dim(self) -> int:
        return self.n * (self.n + 1) // 2

    # -- construction / validation ----------------------------------------

    def identity(self) -> ManifoldPoint:
        return ManifoldPoint(self, np.eye(self.n))

    def point(self, mat) -> ManifoldPoint:
        a = np.asarray(mat, dtype=float)
        if a.shape != (self.n, self.n):
            raise ValueError(
                f"expected a {self.n}x{self.n} matrix, got shape {a.shape}")
        asym = float(np.abs(a - a.T).max())
        if asym > COORD_TOL * max(1.0, float(np.abs(a).max())):
            raise ValueError(f"not symmetric: max asymmetry {asym:.3e}")
        w = np.linalg.eigvalsh(_sym(a))
        if w[0] <= _EIG_FLOOR * max(w[-1], 0.0):
            raise ValueError(
                f"not positive definite: eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}]")
        return ManifoldPoint(self, _sym(a))

    def tangent(self, p: ManifoldPoint, mat) -> TangentVector:
        self._own_point(p)
        x = np.asarray(mat, dtype=float)
        if x.shape != (self.n, self.n):
            raise ValueError(
                f"expected a {self.n}x{self.n} matrix, got shape {x.shape}")
        asym = float(np.abs(x - x.T).max())
        if asym > COORD_TOL * max(1.0, float(np.abs(x).max())):
            raise ValueError(f"not symmetric: max asymmetry {asym:.3e}")
        return TangentVector(p, _sym(x))

    def project_tangent(self, p: ManifoldPoint, mat) -> TangentVector:
        self._own_point(p)
        return TangentVector(p, _sym(np.asarray(mat, dtype=float)))

    # -- metric ops ---------------------------------------------------------

    def inner(self, p, X, Y) -> float:
        self._own_tangent(X, at=p)
        self._own_tangent(Y, at=p)
        a = np.linalg.solve(p.coords, X.vec)
        b = np.linalg.solve(p.coords, Y.vec)
        return float((a * b.T).sum())

    def _roots(self, p):
        """(p^{1/2}, p^{-1/2}) via one eigendecomposition."""
        w, u = np.linalg.eigh(_sym(p))
        w = np.maximum(w, np.finfo(float).tiny)
        sw = np.sqrt(w)
        return (u * sw) @ u.T, (u / sw) @ u.T

    def dist(self, p, q) -> float:
        self._own_point(p)
        self._own_point(q)
        return self._dist(p.coords, q.coords)

    def _dist(self, x, y) -> float:
        _, isq = self._roots(x)
        w = np.linalg.eigvalsh(_sym(isq @ y @ isq))
        w = np.maximum(w, np.finfo(float).tiny)
        return float(np.sqrt((np.log(w) ** 2).sum()))

    def exp(self, p, X) -> ManifoldPoint:
        self._own_tangent(X, at=p)
        return ManifoldPoint(self, self._exp(p.coords, X.vec))

    def _exp(self, x, v):
        sq, isq = self._roots(x)
        e = _eigh_fun(isq @ v @ isq, np.exp)
        return _sym(sq @ e @ sq)

    def log(self, p, q) -> TangentVector:
        self._own_point(p)
        self._own_point(q)
        return TangentVector(p, self._log(p.coords, q.coords))

    def _log(self, x, y):
        sq, isq = self._roots(x)
        lg = _eigh_fun(isq @ y @ isq,
                       lambda w: np.log(np.maximum(w, np.finfo(float).tiny)))
        return _sym(sq @ lg @ sq)

    # -- sampling -----------------------------------------------------------

    def random_tangent(self, p, rng, scale: float = 1.0) -> TangentVector:
        """Random symmetric direction with metric norm equal to scale.

        Draws G symmetric Gaussian and maps it through p^{1/2} G p^{1/2},
        which has ||.||_p equal to ||G||_F; G is then rescaled so the
        result has norm scale exactly.
        """
        self._own_point(p)
        g = _sym(rng.normal(size=(self.n, self.n)))
        nrm = float(np.sqrt((g * g).sum()))
        if nrm > 0:
            g *= scale / nrm
        sq, _ = self._roots(p.coords)
        return TangentVector(p, _sym(sq @ g @ sq))

    def random_point(self, rng, scale: float = 1.0,
                     anchor: ManifoldPoint = None) -> ManifoldPoint:
        """exp of a random tangent at anchor (default identity).

        The tangent's metric norm, hence the distance from the anchor, is
        scale * u with u uniform on (0, 1).
        """
        base = self.identity() if anchor is None else anchor
        r = scale * rng.uniform()
        return self.exp(base, self.random_tangent(base, rng, scale=r))


# -- module-level named ops --------------------------------------------------

def spd_inner(geom: SpdGeometry, p, a, b) -> float:
    return geom.inner(p, a, b)


def spd_dist(geom: SpdGeometry, p, q) -> float:
    return geom.dist(p, q)


def spd_exp(geom: SpdGeometry, p, v) -> ManifoldPoint:
    return geom.exp(p, v)


def spd_log(geom: SpdGeometry, p, q) -> TangentVector:
    return geom.log(p, q)

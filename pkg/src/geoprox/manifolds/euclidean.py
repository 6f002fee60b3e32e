"""Flat space. Exists so curvature-dependent results can be sanity-checked
against their classical zero-curvature forms on genuinely flat instances."""

import numpy as np

from .base import CurvatureBounds, Geometry, ManifoldPoint, TangentVector


class EuclideanGeometry(Geometry):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = int(n)
        self.curvature = CurvatureBounds(0.0, 0.0)

    def _key(self):
        return self.n

    def __repr__(self):
        return f"EuclideanGeometry({self.n})"

    def point(self, coords) -> ManifoldPoint:
        c = np.asarray(coords, dtype=float)
        if c.shape != (self.n,):
            raise ValueError(f"expected {self.n} coordinates, got {c.shape}")
        return ManifoldPoint(self, c.copy())

    def tangent(self, p, vec) -> TangentVector:
        self._own_point(p)
        v = np.asarray(vec, dtype=float)
        if v.shape != (self.n,):
            raise ValueError(f"expected {self.n} components, got {v.shape}")
        return TangentVector(p, v.copy())

    def project_tangent(self, p, vec) -> TangentVector:
        return self.tangent(p, vec)

    def inner(self, p, X, Y) -> float:
        self._own_tangent(X, at=p)
        self._own_tangent(Y, at=p)
        return float(X.vec @ Y.vec)

    def dist(self, p, q) -> float:
        self._own_point(p)
        self._own_point(q)
        return float(np.linalg.norm(p.coords - q.coords))

    def exp(self, p, X) -> ManifoldPoint:
        self._own_tangent(X, at=p)
        return ManifoldPoint(self, p.coords + X.vec)

    def log(self, p, q) -> TangentVector:
        self._own_point(p)
        self._own_point(q)
        return TangentVector(p, q.coords - p.coords)

    def random_point(self, rng, scale: float = 1.0) -> ManifoldPoint:
        return ManifoldPoint(self, rng.normal(0.0, scale, size=self.n))

    def random_tangent(self, p, rng, scale: float = 1.0) -> TangentVector:
        self._own_point(p)
        return TangentVector(p, rng.normal(0.0, scale, size=self.n))

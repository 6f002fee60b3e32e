"""Core geometry interface and curvature-dependent comparison coefficients.

A Geometry bundles the metric operations of one Riemannian manifold with
bounded sectional curvature: inner product, distance, exponential and
logarithmic maps, tangent projection, and random sampling. Points and
tangent vectors are thin wrappers that remember which geometry they belong
to, so accidentally mixing spaces fails fast instead of producing garbage.
"""

import math
from dataclasses import dataclass

import numpy as np

COORD_TOL = 1e-10      # membership / tangency tolerance
_SERIES_TOL = 1e-4     # argument below which t*coth(t), t*cot(t) use series


@dataclass(frozen=True)
class CurvatureBounds:
    """Closed interval [lower, upper] containing all sectional curvatures."""
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("curvature lower bound exceeds upper bound")


@dataclass(frozen=True, eq=False)
class ManifoldPoint:
    """A point: raw coordinates tagged with the geometry that owns them."""
    geometry: "Geometry"
    coords: np.ndarray


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A tangent vector attached to its base point."""
    base: ManifoldPoint
    vec: np.ndarray

    @property
    def geometry(self):
        return self.base.geometry


def curvature_coefficients(kappa_min: float, kappa_max: float, s: float):
    """Comparison coefficients (zeta1, zeta2, sigma) at scale s >= 0.

    zeta1 depends on the curvature lower bound: 1 when kappa_min >= 0,
    otherwise sqrt(-kappa_min)*s*coth(sqrt(-kappa_min)*s); always >= 1 and
    grows with s. zeta2 depends on the upper bound: 1 when kappa_max <= 0,
    otherwise sqrt(kappa_max)*s*cot(sqrt(kappa_max)*s), which requires
    s < pi/sqrt(kappa_max) and is <= 1. sigma = max(zeta1, |zeta2|).
    """
    if s < 0:
        raise ValueError(f"scale must be nonnegative, got {s}")
    if kappa_min > kappa_max:
        raise ValueError("kappa_min exceeds kappa_max")

    if kappa_min >= 0:
        zeta1 = 1.0
    else:
        a = math.sqrt(-kappa_min) * s
        if a < _SERIES_TOL:
            zeta1 = 1.0 + a * a / 3.0 - a ** 4 / 45.0
        else:
            zeta1 = a / math.tanh(a)

    if kappa_max <= 0:
        zeta2 = 1.0
    else:
        b = math.sqrt(kappa_max) * s
        if b >= math.pi:
            raise ValueError(
                f"scale {s} reaches the conjugate radius pi/sqrt(kappa_max)")
        if b < _SERIES_TOL:
            zeta2 = 1.0 - b * b / 3.0 - b ** 4 / 45.0
        else:
            zeta2 = b * math.cos(b) / math.sin(b)

    sigma = max(zeta1, abs(zeta2))
    return zeta1, zeta2, sigma


class Geometry:
    """Abstract metric-operations bundle. Subclasses fill in the math."""

    curvature: CurvatureBounds

    # -- identity ---------------------------------------------------------

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash((type(self), self._key()))

    # -- validation helpers -----------------------------------------------

    def _own_point(self, p: ManifoldPoint, what: str = "point"):
        if not isinstance(p, ManifoldPoint) or p.geometry != self:
            raise ValueError(f"{what} does not belong to {self}")

    def _own_tangent(self, X: TangentVector, at: ManifoldPoint = None):
        if not isinstance(X, TangentVector) or X.geometry != self:
            raise ValueError(f"tangent vector does not belong to {self}")
        if at is not None and not np.array_equal(X.base.coords, at.coords):
            raise ValueError("tangent vector attached to a different point")

    # -- interface ----------------------------------------------------------

    def point(self, coords) -> ManifoldPoint:
        """Validate raw coordinates and wrap them."""
        raise NotImplementedError

    def tangent(self, p: ManifoldPoint, vec) -> TangentVector:
        """Validate a raw tangent vector at p and wrap it."""
        raise NotImplementedError

    def inner(self, p: ManifoldPoint, X: TangentVector, Y: TangentVector) -> float:
        raise NotImplementedError

    def norm(self, p: ManifoldPoint, X: TangentVector) -> float:
        return math.sqrt(max(self.inner(p, X, X), 0.0))

    def dist(self, p: ManifoldPoint, q: ManifoldPoint) -> float:
        raise NotImplementedError

    def exp(self, p: ManifoldPoint, X: TangentVector) -> ManifoldPoint:
        raise NotImplementedError

    def log(self, p: ManifoldPoint, q: ManifoldPoint) -> TangentVector:
        raise NotImplementedError

    def project_tangent(self, p: ManifoldPoint, vec) -> TangentVector:
        raise NotImplementedError

    def scale_tangent(self, X: TangentVector, c: float) -> TangentVector:
        return TangentVector(X.base, c * X.vec)

    def zero_tangent(self, p: ManifoldPoint) -> TangentVector:
        self._own_point(p)
        return TangentVector(p, np.zeros_like(p.coords))

    def random_point(self, rng, scale: float = 1.0) -> ManifoldPoint:
        raise NotImplementedError

    def random_tangent(self, p: ManifoldPoint, rng, scale: float = 1.0) -> TangentVector:
        raise NotImplementedError


def geodesic(geometry: Geometry, p: ManifoldPoint, q: ManifoldPoint,
             t: float) -> ManifoldPoint:
    """Point a fraction t along the geodesic from p to q (t=0 gives p)."""
    X = geometry.log(p, q)
    return geometry.exp(p, geometry.scale_tangent(X, t))

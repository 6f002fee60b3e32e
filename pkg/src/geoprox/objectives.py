"""Objective functions and split problems.

A split problem is a sum f = g + h with g geodesically convex and smooth
(Lipschitz gradient on the region the solver visits) and h geodesically
convex, possibly nonsmooth, accessed only through its prox. Three concrete
families live here:

  * quartic log-determinant plus a distance pull on SPD matrices,
  * Frechet mean energy plus an l1 term on the hyperboloid (sparse mean),
  * Frechet mean energy plus a geodesic-ball indicator (constrained mean).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .manifolds.base import Geometry, ManifoldPoint, TangentVector
from .manifolds.base import curvature_coefficients
from .manifolds.hyperboloid import HyperbolicGeometry
from .proxops import prox_distance, prox_l1_hyperbolic, project_ball

_BALL_EVAL_TOL = 1e-9   # indicator slack, well under reporting tolerances


@dataclass(frozen=True)
class DataCloud:
    """A finite family of points on one geometry, with uniform weights.

    For hyperbolic clouds the coordinates are stacked into one array so
    batched kernels can sweep them without Python overhead.
    """
    geometry: Geometry
    points: tuple
    stack: Optional[np.ndarray] = None

    @classmethod
    def from_points(cls, points) -> "DataCloud":
        points = tuple(points)
        if not points:
            raise ValueError("cloud must contain at least one point")
        geom = points[0].geometry
        for q in points:
            if q.geometry != geom:
                raise ValueError("cloud points live on different geometries")
        stack = None
        if isinstance(geom, HyperbolicGeometry):
            stack = np.ascontiguousarray([q.coords for q in points])
        return cls(geom, points, stack)

    @property
    def size(self) -> int:
        return len(self.points)


def frechet_value(cloud: DataCloud, p: ManifoldPoint) -> float:
    """Mean squared distance to the cloud, (1/2N) sum_i dist(p, q_i)^2."""
    if cloud.stack is not None:
        d = kernels.dist_many(cloud.stack, p.coords)
        return float((d * d).sum() / (2.0 * cloud.size))
    geom = cloud.geometry
    total = 0.0
    for q in cloud.points:
        total += geom.dist(p, q) ** 2
    return total / (2.0 * cloud.size)


def frechet_gradient(cloud: DataCloud, p: ManifoldPoint) -> TangentVector:
    """Gradient -(1/N) sum_i log_p(q_i) of the mean squared distance."""
    if cloud.stack is not None:
        rows = kernels.log_many(p.coords, cloud.stack)
        return TangentVector(p, -rows.sum(axis=0) / cloud.size)
    geom = cloud.geometry
    acc = geom.zero_tangent(p).vec
    for q in cloud.points:
        acc = acc - geom.log(p, q).vec
    return TangentVector(p, acc / cloud.size)


def frechet_lipschitz(cloud: DataCloud, enclosing_diameter: float) -> float:
    """Gradient Lipschitz constant of the mean squared distance over a
    region of the given diameter containing the cloud: the lower-curvature
    distortion coefficient at that diameter."""
    if enclosing_diameter < 0:
        raise ValueError("diameter must be nonnegative")
    cb = cloud.geometry.curvature
    z1, _, _ = curvature_coefficients(cb.lower, cb.upper, enclosing_diameter)
    return z1


# -- quartic log-determinant on SPD ------------------------------------------


def _logdet(p: ManifoldPoint) -> float:
    w = np.linalg.eigvalsh(p.coords)
    return float(np.log(w).sum())


def logdet4_value(p: ManifoldPoint) -> float:
    return _logdet(p) ** 4


def logdet4_gradient(p: ManifoldPoint) -> TangentVector:
    c = _logdet(p)
    return TangentVector(p, (4.0 * c ** 3) * p.coords)


def logdet4_hessian_bound(p: ManifoldPoint) -> float:
    """Operator-norm bound 12 n (log det p)^2 on the Hessian of the
    quartic log-determinant at p (affine-invariant metric)."""
    n = p.coords.shape[0]
    return 12.0 * n * _logdet(p) ** 2


def logdet4_lipschitz(geom, p0: ManifoldPoint, radius: float,
                      samples: int, rng) -> float:
    """Empirical gradient Lipschitz constant over the ball B(p0, radius):
    the max of the Hessian bound at `samples` random ball points (uniform
    radius fraction times random direction). Raw max, no floor."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    best = logdet4_hessian_bound(p0)
    for _ in range(samples):
        u = rng.uniform()
        q = geom.exp(p0, geom.random_tangent(p0, rng, scale=radius * u))
        best = max(best, logdet4_hessian_bound(q))
    return best


# -- split problems -----------------------------------------------------------


@dataclass
class SplitProblem:
    """f = g + h with smooth g (value + gradient) and prox-friendly h.

    lipschitz bounds the gradient of g on the region the run visits;
    strong_convexity is a modulus for f (0 when unknown). ball carries
    (center, radius) when h is a geodesic-ball indicator. prox_events is
    a per-run scratch list of prox convergence flags: solvers clear it at
    the start of a run and inexact prox closures append to it, so one
    problem instance must not be shared by concurrently running solvers.
    """
    geometry: Geometry
    g_value: Callable[[ManifoldPoint], float]
    g_gradient: Callable[[ManifoldPoint], TangentVector]
    h_value: Callable[[ManifoldPoint], float]
    h_prox: Callable[[float, ManifoldPoint], ManifoldPoint]
    lipschitz: float
    strong_convexity: float = 0.0
    name: str = ""
    ball: Optional[tuple] = None
    prox_events: list = field(default_factory=list)

    def __post_init__(self):
        if not (self.lipschitz > 0 and math.isfinite(self.lipschitz)):
            raise ValueError("lipschitz must be positive and finite")
        if self.strong_convexity < 0:
            raise ValueError("strong_convexity must be nonnegative")

    def f_value(self, p: ManifoldPoint) -> float:
        return self.g_value(p) + self.h_value(p)


def spd_quartic_problem(geom, q_bar: ManifoldPoint, tau: float,
                        lipschitz: float) -> SplitProblem:
    """(log det p)^4 + tau * dist(p, q_bar) on SPD matrices."""
    if tau <= 0:
        raise ValueError("tau must be positive")

    def h_value(p):
        return tau * geom.dist(p, q_bar)

    def h_prox(lam, p):
        return prox_distance(geom, q_bar, tau, lam, p)

    return SplitProblem(geom, logdet4_value, logdet4_gradient,
                        h_value, h_prox, lipschitz, name="spd-quartic")


def sparse_mean_problem(cloud: DataCloud, mu: float, lipschitz: float,
                        prox_tol: float = 1e-7,
                        prox_max_iter: int = 20) -> SplitProblem:
    """Frechet mean energy plus mu * ||p||_1 on the hyperboloid."""
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if not isinstance(cloud.geometry, HyperbolicGeometry):
        raise ValueError("sparse mean is defined on the hyperboloid only")

    def g_value(p):
        return frechet_value(cloud, p)

    def g_gradient(p):
        return frechet_gradient(cloud, p)

    def h_value(p):
        return mu * float(np.abs(p.coords).sum())

    problem = SplitProblem(cloud.geometry, g_value, g_gradient, h_value,
                           None, lipschitz, strong_convexity=1.0,
                           name="sparse-mean")

    def h_prox(lam, p):
        res = prox_l1_hyperbolic(p, lam * mu, tol=prox_tol,
                                 max_iter=prox_max_iter)
        problem.prox_events.append(res.converged)
        return res.point

    problem.h_prox = h_prox
    return problem


def constrained_mean_problem(cloud: DataCloud, center: ManifoldPoint,
                             radius: float, lipschitz: float) -> SplitProblem:
    """Frechet mean energy restricted to the ball B(center, radius):
    h is the indicator, its prox the metric projection."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    geom = cloud.geometry

    def g_value(p):
        return frechet_value(cloud, p)

    def g_gradient(p):
        return frechet_gradient(cloud, p)

    def h_value(p):
        d = geom.dist(center, p)
        return 0.0 if d <= radius + _BALL_EVAL_TOL else math.inf

    def h_prox(lam, p):
        return project_ball(geom, center, radius, p)

    return SplitProblem(geom, g_value, g_gradient, h_value, h_prox,
                        lipschitz, strong_convexity=1.0,
                        name="constrained-mean", ball=(center, radius))

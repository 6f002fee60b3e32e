"""Proximal operators.

prox of a function h at p with stepsize lambda: the minimizer of
h(q) + dist(p, q)^2 / (2 lambda). Closed forms exist for the distance to a
fixed point, the squared distance, and the indicator of a geodesic ball;
the l1 norm on the hyperboloid needs a one-dimensional fixed-point
iteration (the shrink amount t is the unknown).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .manifolds.base import Geometry, ManifoldPoint, geodesic
from .manifolds.hyperboloid import HyperbolicGeometry, minkowski_inner


def prox_distance(geom: Geometry, q_bar: ManifoldPoint, tau: float,
                  lam: float, p: ManifoldPoint) -> ManifoldPoint:
    """Prox of tau * dist(., q_bar): walk arclength min(lam*tau, dist)
    from p toward q_bar along the unit-speed geodesic."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    d = geom.dist(p, q_bar)
    if d <= lam * tau:
        return q_bar
    return geodesic(geom, p, q_bar, lam * tau / d)


def prox_sq_distance(geom: Geometry, q: ManifoldPoint, weight: float,
                     lam: float, p: ManifoldPoint) -> ManifoldPoint:
    """Prox of weight * dist(., q)^2 / 2: the geodesic point at
    fraction t = lam*weight / (1 + lam*weight) from p toward q."""
    if weight <= 0:
        raise ValueError("weight must be positive")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    t = lam * weight / (1.0 + lam * weight)
    return geodesic(geom, p, q, t)


def project_ball(geom: Geometry, p0: ManifoldPoint, r: float,
                 p: ManifoldPoint) -> ManifoldPoint:
    """Metric projection onto the closed geodesic ball B(p0, r)."""
    if r <= 0:
        raise ValueError("radius must be positive")
    d = geom.dist(p0, p)
    if d <= r:
        return p
    return geodesic(geom, p0, p, r / d)


# -- l1 prox on the hyperboloid ---------------------------------------------


@dataclass(frozen=True)
class L1ProxResult:
    point: ManifoldPoint
    t_star: float
    iterations: int
    converged: bool
    t_history: Optional[tuple] = None


def l1_shrink_vector(x: ManifoldPoint, t: float) -> np.ndarray:
    """Componentwise shrink of the spacelike coordinates by t, with the
    timelike coordinate grown by t. Returns a raw ambient vector (in
    general off the manifold; see l1_normalize)."""
    if t < 0:
        raise ValueError("shrink amount must be nonnegative")
    c = x.coords
    out = np.empty_like(c)
    space = c[:-1]
    out[:-1] = np.sign(space) * np.maximum(np.abs(space) - t, 0.0)
    out[-1] = c[-1] + t
    return out


def l1_normalize(geom: HyperbolicGeometry, v) -> ManifoldPoint:
    """Scale a timelike vector back onto the hyperboloid sheet."""
    v = np.asarray(v, dtype=float)
    m = minkowski_inner(v, v)
    if m >= 0:
        raise ValueError("vector is not timelike, cannot normalize")
    if v[-1] <= 0:
        raise ValueError("vector points at the lower sheet")
    return ManifoldPoint(geom, v / math.sqrt(-m))


def l1_sigma(x: ManifoldPoint, y: ManifoldPoint, mu_eff: float) -> float:
    """Shrink-amount update sigma_x(y) = mu_eff * sqrt(<x,y>_M^2 - 1) /
    arccosh(-<x,y>_M), which equals mu_eff * sinh(d)/d at d = dist(x,y);
    limit mu_eff at y = x."""
    s = max(-minkowski_inner(x.coords, y.coords), 1.0)
    u = s - 1.0
    if u < 1e-8:
        return mu_eff * (1.0 + u / 3.0)
    return mu_eff * math.sqrt(s * s - 1.0) / math.acosh(s)


def l1_shrink_limit(x: ManifoldPoint, mu_eff: float) -> float:
    """Upper endpoint t_max of the shrink-amount interval: the sigma value
    at the fully shrunk point, mu_eff * sqrt(x_ts^2 - 1)/arccosh(x_ts)
    with x_ts the timelike coordinate."""
    s = max(float(x.coords[-1]), 1.0)
    u = s - 1.0
    if u < 1e-8:
        return mu_eff * (1.0 + u / 3.0)
    return mu_eff * math.sqrt(s * s - 1.0) / math.acosh(s)


def prox_l1_hyperbolic(x: ManifoldPoint, mu_eff: float, tol: float = 1e-7,
                       max_iter: int = 20,
                       record_history: bool = False) -> L1ProxResult:
    """Prox of mu * ||.||_1 on H^n with effective weight mu_eff = lambda*mu.

    Iterates t <- l1_sigma(x, l1_normalize(l1_shrink_vector(x, t))) from
    t0 = mu_eff until successive t values differ by less than tol. Twenty
    iterations normally suffice by a wide margin; running out is reported
    through the converged flag, never raised.
    """
    if mu_eff < 0:
        raise ValueError("mu_eff must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    geom = x.geometry
    if not isinstance(geom, HyperbolicGeometry):
        raise ValueError("l1 prox is defined on the hyperboloid only")

    if not record_history:
        y, t_star, iters, conv = kernels.l1_prox_fp(
            x.coords, float(mu_eff), float(tol), int(max_iter))
        return L1ProxResult(ManifoldPoint(geom, y), float(t_star),
                            int(iters), bool(conv))

    t = mu_eff
    history = [t]
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = l1_normalize(geom, l1_shrink_vector(x, t))
        t_new = l1_sigma(x, y, mu_eff)
        history.append(t_new)
        done = abs(t_new - t) < tol
        t = t_new
        if done:
            converged = True
            break
    y = l1_normalize(geom, l1_shrink_vector(x, t))
    return L1ProxResult(y, t, it, converged, tuple(history))


def l1_subgradient_vector(x: ManifoldPoint, res: L1ProxResult) -> np.ndarray:
    """The ambient subgradient certificate v*: sign(y_i) on nonzero
    coordinates of the prox point, x_i / t* on the zeroed ones."""
    y = res.point.coords
    t = res.t_star
    v = np.sign(y)
    if t > 1e-300:
        zero = y[:-1] == 0.0
        v[:-1][zero] = x.coords[:-1][zero] / t
    return v


def l1_stationarity_residual(x: ManifoldPoint, res: L1ProxResult) -> float:
    """Euclidean norm of (x - t* J v*) - (-<y, x - t* J v*>_M) y, the
    collinearity defect between the shrunk vector and the prox point."""
    v = l1_subgradient_vector(x, res)
    jv = v.copy()
    jv[-1] = -jv[-1]
    w = x.coords - res.t_star * jv
    y = res.point.coords
    r = w - (-minkowski_inner(y, w)) * y
    return float(np.linalg.norm(r))


def l1_tangent_residual(x: ManifoldPoint, res: L1ProxResult,
                        mu_eff: float) -> float:
    """Metric norm of log_y(x) - mu_eff * proj_y(J v*), the first-order
    optimality defect of the prox point. Scales with the fixed-point
    tolerance, so it is the sharper convergence certificate."""
    geom = x.geometry
    y = res.point
    v = l1_subgradient_vector(x, res)
    jv = v.copy()
    jv[-1] = -jv[-1]
    lhs = geom.log(y, x).vec
    rhs = mu_eff * geom.project_tangent(y, jv).vec
    diff = lhs - rhs
    return math.sqrt(max(minkowski_inner(diff, diff), 0.0))

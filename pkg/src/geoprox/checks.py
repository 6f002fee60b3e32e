"""Numerical oracles for the method's inequalities and convergence rates.

Every check evaluates an inequality the theory guarantees and reports the
slack LHS - RHS, so slack >= 0 (up to a stated tolerance) means the
guarantee held. Checks are diagnostics with explicit tolerances, not
proofs: the rate checks in particular replace unknowable quantities (the
true minimizer, the level-set diameter) by computable proxies, clamped so
that the asserted bounds remain consequences of the recorded run.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .manifolds.base import (Geometry, ManifoldPoint,
                             curvature_coefficients)
from .manifolds.hyperboloid import HyperbolicGeometry
from .objectives import SplitProblem
from .solvers import SolverTrace

# Variants of the prox-grad inequality, named by where the curvature
# coefficients sit: BASE_WEIGHTED puts zeta_1 on the dist(p, q) term and
# leaves the step term dist(p, T) with unit weight; STEP_WEIGHTED puts
# zeta_2 on the step term; DISTANCE_ONLY is the two-coefficient special
# case whose weights depend on plain distances, not triangle diameters.
BASE_WEIGHTED = "base-weighted"
STEP_WEIGHTED = "step-weighted"
DISTANCE_ONLY = "distance-only"
PROX_GRAD_VARIANTS = (BASE_WEIGHTED, STEP_WEIGHTED, DISTANCE_ONLY)

_G_CONDITION_TOL = 1e-10   # additive tolerance on the smooth-part condition
_DELTA_FLOOR = 1e-12       # cost gaps below this are roundoff, excluded
_AMBIGUOUS_BAND = 0.05     # regime ratios within 5% of 1 are not asserted


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality evaluation.

    slack is LHS - RHS; the inequality held when slack >= -tolerance.
    applicable is False when the check's precondition failed, in which
    case holds is None and slack describes the precondition margin.
    """
    name: str
    slack: float
    tolerance: float
    context: dict
    applicable: bool = True

    def __post_init__(self):
        if not math.isfinite(self.slack):
            raise ValueError("report slack must be finite")

    @property
    def holds(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return self.slack >= -self.tolerance


@dataclass(frozen=True)
class RateEnvelope:
    """Constants entering the convergence-rate bounds.

    alpha and beta bracket lambda*L over the run; R_hat proxies the
    diameter of the region the iterates explored; R_alpha_hat bounds the
    smooth-step displacement dist(p, z_p); zeta1_at_R_alpha is the
    lower-curvature distortion coefficient at R_alpha_hat. sigma_min_curv
    and g_plus are optional logged constants, never asserted against.
    """
    kind: str
    beta: float
    alpha: float
    L: float
    mu_bar: float
    R_hat: float
    R_alpha_hat: float
    zeta1_at_R_alpha: float
    sigma_min_curv: Optional[float] = None
    g_plus: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("sublinear", "linear"):
            raise ValueError("kind must be 'sublinear' or 'linear'")
        for label in ("beta", "alpha", "L", "zeta1_at_R_alpha"):
            if getattr(self, label) <= 0:
                raise ValueError("%s must be positive" % label)
        if self.mu_bar < 0:
            raise ValueError("mu_bar must be nonnegative")
        if self.R_hat < 0 or self.R_alpha_hat < 0:
            raise ValueError("radius proxies must be nonnegative")


@dataclass(frozen=True)
class RateReport:
    """Outcome of a rate check over a whole trace."""
    name: str
    holds: bool
    n_checked: int
    n_ambiguous: int
    n_floored: int
    min_slack: float
    details: dict


def triangle_diameter(geom: Geometry, a: ManifoldPoint, b: ManifoldPoint,
                      c: ManifoldPoint) -> float:
    """Diameter of the geodesic triangle abc: its longest side."""
    return max(geom.dist(a, b), geom.dist(a, c), geom.dist(b, c))


# -- sufficient decrease ------------------------------------------------------


def check_sufficient_decrease(problem: SplitProblem, p: ManifoldPoint,
                              lam: float) -> InequalityReport:
    """Composite decrease of one proximal gradient step from p.

    slack = [f(p) - f(T)] - (2 - lam L)/(2 lam) dist(p, T)^2 with T the
    update; nonnegative (to tolerance) for convex problems when lam lies
    in (0, 2/L). The context also carries the stronger half-quadratic
    decrease margin (slack2, valid whenever the smooth part's own decrease
    condition held at lam, reported as g_slack).
    """
    L = problem.lipschitz
    if not (0.0 < lam < 2.0 / L):
        raise ValueError("lambda must lie in (0, 2/L)")
    geom = problem.geometry
    grad = problem.g_gradient(p)
    z = geom.exp(p, geom.scale_tangent(grad, -lam))
    t_point = problem.h_prox(lam, z)
    d = geom.dist(p, t_point)
    f_p = problem.f_value(p)
    f_t = problem.f_value(t_point)
    g_bound = problem.g_value(p) \
        + geom.inner(p, grad, geom.log(p, t_point)) + d * d / (2.0 * lam)
    g_slack = g_bound - problem.g_value(t_point)

    slack = (f_p - f_t) - (2.0 - lam * L) / (2.0 * lam) * d * d
    slack2 = (f_p - f_t) - d * d / (2.0 * lam)
    scale = 1.0 + abs(f_p)
    context = {"lambda": lam, "f_p": f_p, "f_next": f_t, "step": d,
               "slack2": slack2, "g_slack": g_slack,
               "g_condition_holds": g_slack >= -_G_CONDITION_TOL}
    return InequalityReport("sufficient-decrease", slack, 1e-9 * scale,
                            context)


# -- prox-grad inequalities ---------------------------------------------------


def check_prox_grad_inequality(problem: SplitProblem, p: ManifoldPoint,
                               q: ManifoldPoint, lam: float, variant: str,
                               curvature_override=None) -> InequalityReport:
    """One of the three forms of the prox-grad inequality at (p, q, lam).

    The step is taken FROM q: z is the smooth step, T the prox of z. The
    precondition is the smooth part's decrease condition at q; when it
    fails the report is marked inapplicable. curvature_override replaces
    the geometry's curvature bounds (pass (0, 0) for the flat-space
    sanity form where every coefficient collapses to 1).
    """
    if variant not in PROX_GRAD_VARIANTS:
        raise ValueError("unknown variant %r" % (variant,))
    if lam <= 0:
        raise ValueError("lambda must be positive")
    geom = problem.geometry
    if curvature_override is None:
        kmin, kmax = geom.curvature.lower, geom.curvature.upper
    else:
        kmin, kmax = curvature_override

    grad_q = problem.g_gradient(q)
    z = geom.exp(q, geom.scale_tangent(grad_q, -lam))
    t_point = problem.h_prox(lam, z)

    d_qt = geom.dist(q, t_point)
    g_bound = problem.g_value(q) \
        + geom.inner(q, grad_q, geom.log(q, t_point)) \
        + d_qt * d_qt / (2.0 * lam)
    g_slack = g_bound - problem.g_value(t_point)
    if g_slack < -_G_CONDITION_TOL:
        return InequalityReport("prox-grad/" + variant, g_slack,
                                _G_CONDITION_TOL,
                                {"lambda": lam, "precondition": "failed",
                                 "g_slack": g_slack},
                                applicable=False)

    d_pq = geom.dist(p, q)
    d_pt = geom.dist(p, t_point)
    d_pz = geom.dist(p, z)
    d_qz = geom.dist(q, z)
    d_zt = geom.dist(z, t_point)

    def zeta1(s):
        return curvature_coefficients(kmin, kmax, s)[0]

    def zeta2(s):
        return curvature_coefficients(kmin, kmax, s)[1]

    ell = problem.g_value(p) - problem.g_value(q) \
        - geom.inner(q, grad_q, geom.log(q, p))
    lhs = problem.f_value(p) - problem.f_value(t_point)
    two_lam = 2.0 * lam

    if variant == BASE_WEIGHTED:
        diam_qzt = max(d_qz, d_qt, d_zt)
        diam_qzp = max(d_qz, d_pq, d_pz)
        diam_tzp = max(d_zt, d_pt, d_pz)
        rhs = ell + d_pt * d_pt / two_lam \
            - zeta1(diam_qzp) * d_pq * d_pq / two_lam \
            + (zeta2(diam_tzp) - 1.0) * d_zt * d_zt / two_lam \
            + (zeta2(diam_qzt) - 1.0) * d_qz * d_qz / two_lam
        diams = {"diam_qzt": diam_qzt, "diam_qzp": diam_qzp,
                 "diam_tzp": diam_tzp}
    elif variant == STEP_WEIGHTED:
        diam_qzt = max(d_qz, d_qt, d_zt)
        diam_qzp = max(d_qz, d_pq, d_pz)
        diam_tzp = max(d_zt, d_pt, d_pz)
        rhs = ell + zeta2(diam_tzp) * d_pt * d_pt / two_lam \
            - d_pq * d_pq / two_lam \
            + (1.0 - zeta1(diam_qzp)) * d_qz * d_qz / two_lam \
            + (zeta2(diam_qzt) - 1.0) * d_qt * d_qt / two_lam
        diams = {"diam_qzt": diam_qzt, "diam_qzp": diam_qzp,
                 "diam_tzp": diam_tzp}
    else:
        rhs = ell + d_pt * d_pt / two_lam \
            - (zeta1(d_qz) + 1.0) * d_pq * d_pq / (2.0 * two_lam) \
            - (zeta1(d_pq) - 1.0) * d_qz * d_qz / (2.0 * two_lam)
        diams = {}

    slack = lhs - rhs
    scale = 1.0 + max(abs(lhs), abs(rhs))
    context = {"lambda": lam, "lhs": lhs, "rhs": rhs, "ell": ell,
               "d_pq": d_pq, "d_pt": d_pt, "d_pz": d_pz, "d_qz": d_qz,
               "d_zt": d_zt, "d_qt": d_qt, "g_slack": g_slack}
    context.update(diams)
    return InequalityReport("prox-grad/" + variant, slack, 1e-8 * scale,
                            context)


# -- rate envelopes -----------------------------------------------------------


def _points_of(geom, trace):
    return [ManifoldPoint(geom, c) for c in trace.iterates]


def _dists_to(geom, points, target) -> np.ndarray:
    if isinstance(geom, HyperbolicGeometry):
        from . import kernels
        stack = np.ascontiguousarray([p.coords for p in points])
        return kernels.dist_many(stack, target.coords)
    return np.array([geom.dist(p, target) for p in points])


def _pairwise_max(geom, points) -> float:
    if isinstance(geom, HyperbolicGeometry):
        stack = np.ascontiguousarray([p.coords for p in points])
        space = stack[:, :-1] @ stack[:, :-1].T
        times = np.outer(stack[:, -1], stack[:, -1])
        s = np.maximum(times - space, 1.0)
        return float(np.arccosh(s).max())
    best = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            best = max(best, geom.dist(points[i], points[j]))
    return best


def build_envelope(trace: SolverTrace, problem: SplitProblem,
                   p_star: Optional[ManifoldPoint] = None,
                   kind: str = "sublinear",
                   subsample: int = 200) -> RateEnvelope:
    """Rate-bound constants from a recorded run.

    R_hat follows the level-set diameter proxy (max pairwise distance
    among recorded iterates plus dist(start, final)), then is raised to
    at least the largest observed distance to p_star; R_alpha_hat is the
    smooth-step bound sqrt(alpha/(2-alpha)) (dist(p_star, start) + R_hat)
    raised to at least the largest observed smooth step. The raises keep
    every asserted bound a consequence of the run rather than of proxy
    luck. Pairwise distances use at most `subsample` evenly strided
    iterates (exact below that count).
    """
    geom = problem.geometry
    points = _points_of(geom, trace)
    if p_star is None:
        p_star = points[-1]
    if trace.alpha <= 0 or trace.alpha >= 2.0:
        raise ValueError("rate bounds need 0 < lambda*L bound < 2")

    n_pts = len(points)
    cap = 2000 if isinstance(geom, HyperbolicGeometry) else subsample
    if n_pts <= cap:
        sub = points
    else:
        stride = max(1, n_pts // cap)
        idx = sorted(set(range(0, n_pts, stride)) | {0, n_pts - 1})
        sub = [points[i] for i in idx]
    d_star = _dists_to(geom, points, p_star)
    r_hat = _pairwise_max(geom, sub) + geom.dist(points[0], points[-1])
    r_hat = max(r_hat, float(d_star.max()))

    ratio = trace.alpha / (2.0 - trace.alpha)
    r_alpha = math.sqrt(ratio) * (geom.dist(p_star, points[0]) + r_hat)
    if trace.grad_step_lengths:
        r_alpha = max(r_alpha, max(trace.grad_step_lengths))

    kmin, kmax = problem.geometry.curvature.lower, \
        problem.geometry.curvature.upper
    z1 = curvature_coefficients(kmin, kmax, r_alpha)[0]
    return RateEnvelope(kind=kind, beta=trace.beta, alpha=trace.alpha,
                        L=problem.lipschitz,
                        mu_bar=problem.strong_convexity,
                        R_hat=r_hat, R_alpha_hat=r_alpha,
                        zeta1_at_R_alpha=z1)


# -- convergence-rate checks --------------------------------------------------


def check_convex_rate(trace: SolverTrace, envelope: RateEnvelope,
                      f_best: float,
                      p_star: Optional[ManifoldPoint] = None) -> RateReport:
    """Per-iteration sublinear rate bounds for a convex run.

    For each step the regime ratio lambda_{k-1} Delta_{k-1} /
    (zeta_1(D_{k-1}) dist(p^{k-1}, p*)^2) selects either the halving
    bound Delta_k <= Delta_{k-1}/2 or the contraction bound
    Delta_k <= (1 - beta Delta_{k-1}/(2 L zeta_1 R_hat^2)) Delta_{k-1};
    ratios within 5% of 1 are recorded as ambiguous and not asserted,
    gaps below the roundoff floor are excluded. Also asserts the summed
    form Delta_k <= 1/(1/Delta_0 + k delta) and the envelope curve C/k,
    and reports (without asserting) the margin of the smooth-step bound
    D_k <= R_alpha_hat.

    p_star defaults to the trace's own final point.
    """
    geom = trace.final_point.geometry
    points = _points_of(geom, trace)
    if p_star is None:
        p_star = points[-1]
    costs = np.asarray(trace.costs)
    if f_best > costs.min() + 1e-15 * (1.0 + abs(f_best)):
        raise ValueError("f_best must lie at or below every trace cost")
    delta = costs - f_best
    delta0 = float(delta[0])
    d_star = _dists_to(geom, points, p_star)
    kmin, kmax = geom.curvature.lower, geom.curvature.upper

    tol = 1e-8 * max(delta0, 1e-300)
    n_checked = n_amb = n_floor = 0
    min_slack = math.inf
    worst_k = -1
    denom = 2.0 * envelope.L * envelope.zeta1_at_R_alpha \
        * envelope.R_hat ** 2
    for k in range(1, len(costs)):
        dk, dkm1 = float(delta[k]), float(delta[k - 1])
        if dk < _DELTA_FLOOR or dkm1 < _DELTA_FLOOR:
            n_floor += 1
            continue
        d2 = float(d_star[k - 1]) ** 2
        dk_grad = trace.grad_step_lengths[k - 1]
        z1_step = curvature_coefficients(kmin, kmax, dk_grad)[0]
        if d2 <= 0.0:
            ratio = math.inf
        else:
            ratio = trace.lambdas[k - 1] * dkm1 / (z1_step * d2)
        if abs(ratio - 1.0) <= _AMBIGUOUS_BAND:
            n_amb += 1
            continue
        if ratio > 1.0:
            bound = 0.5 * dkm1
        else:
            bound = (1.0 - envelope.beta * dkm1 / denom) * dkm1
        slack = bound - dk
        n_checked += 1
        if slack < min_slack:
            min_slack, worst_k = slack, k

    # summed form: 1/Delta_k grows at least linearly with slope delta_rate
    delta_rate = min(envelope.beta / denom, 1.0 / delta0) \
        if delta0 > _DELTA_FLOOR else 0.0
    summed_min = math.inf
    for k in range(1, len(costs)):
        dk = float(delta[k])
        if dk < _DELTA_FLOOR or delta0 < _DELTA_FLOOR:
            continue
        bound = 1.0 / (1.0 / delta0 + k * delta_rate)
        summed_min = min(summed_min, bound - dk)

    # explicit envelope curve C/k
    c_const = denom / envelope.beta
    envelope_min = math.inf
    for k in range(1, len(costs)):
        dk = float(delta[k])
        if dk < _DELTA_FLOOR:
            continue
        envelope_min = min(envelope_min, c_const / k - dk)

    monotone_min = math.inf
    if len(costs) > 1:
        monotone_min = float((delta[:-1] - delta[1:]).min())

    step_bound_min = math.inf
    if trace.grad_step_lengths:
        step_bound_min = envelope.R_alpha_hat \
            - max(trace.grad_step_lengths)

    holds = (min_slack == math.inf or min_slack >= -tol) \
        and (summed_min == math.inf or summed_min >= -tol) \
        and (envelope_min == math.inf or envelope_min >= -tol) \
        and monotone_min >= -1e-12
    details = {"delta0": delta0, "tolerance": tol,
               "worst_iteration": worst_k,
               "summed_min_slack": summed_min,
               "envelope_min_slack": envelope_min,
               "envelope_constant": c_const,
               "monotone_min_slack": monotone_min,
               "grad_step_bound_min_slack": step_bound_min,
               "delta_rate": delta_rate}
    return RateReport("convex-rate", holds, n_checked, n_amb, n_floor,
                      min_slack if n_checked else math.inf, details)


def check_strongly_convex_rate(trace: SolverTrace, envelope: RateEnvelope,
                               f_best: Optional[float] = None) -> RateReport:
    """Linear rate bounds for a strongly convex run.

    Asserts the per-step contraction Delta_{k+1} <= rho Delta_k (additive
    tolerance 1e-10 Delta_0) with rho = 1 - min(beta mu_bar /
    (4 L zeta_1(R_alpha_hat)), 1/2) < 1, and the iterate bound
    (mu_bar/2) dist(p^k, p*)^2 <= rho^k Delta_0 with p* the final point.
    f_best defaults to the trace's final cost.
    """
    if envelope.mu_bar <= 0:
        raise ValueError("strongly convex check needs mu_bar > 0")
    geom = trace.final_point.geometry
    points = _points_of(geom, trace)
    p_star = points[-1]
    costs = np.asarray(trace.costs)
    if f_best is None:
        f_best = float(costs[-1])
    delta = costs - f_best
    delta0 = max(float(delta[0]), 0.0)
    rho = 1.0 - min(envelope.beta * envelope.mu_bar
                    / (4.0 * envelope.L * envelope.zeta1_at_R_alpha), 0.5)

    tol = 1e-10 * max(delta0, 1e-300)
    n_checked = n_floor = 0
    min_slack = math.inf
    worst_k = -1
    for k in range(1, len(costs)):
        dk, dkm1 = float(delta[k]), float(delta[k - 1])
        if dkm1 < _DELTA_FLOOR:
            n_floor += 1
            continue
        slack = rho * dkm1 - dk
        n_checked += 1
        if slack < min_slack:
            min_slack, worst_k = slack, k

    d_star = _dists_to(geom, points, p_star)
    iterate_min = math.inf
    factor = 1.0
    for k in range(len(costs)):
        lhs = 0.5 * envelope.mu_bar * float(d_star[k]) ** 2
        iterate_min = min(iterate_min, factor * delta0 - lhs)
        factor *= rho

    holds = rho < 1.0 \
        and (min_slack == math.inf or min_slack >= -tol) \
        and iterate_min >= -tol
    details = {"rho": rho, "delta0": delta0, "tolerance": tol,
               "worst_iteration": worst_k,
               "iterate_bound_min_slack": iterate_min}
    return RateReport("strongly-convex-rate", holds, n_checked, 0,
                      n_floor, min_slack if n_checked else math.inf,
                      details)

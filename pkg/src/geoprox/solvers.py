"""Solvers for split problems f = g + h.

The main iteration is the proximal gradient step

    p_next = h_prox(lam, exp_p(-lam * grad g(p)))

with the stepsize either held constant or chosen by a backtracking search
on the smooth part. A cyclic proximal point method and a projected
gradient method are included for comparison runs; the projected gradient
method is literally the proximal gradient iteration with the ball
indicator as h, and shares its code path.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from . import kernels
from .manifolds.base import ManifoldPoint
from .objectives import DataCloud, SplitProblem, frechet_value
from .proxops import prox_sq_distance

_BACKTRACK_CAP = 200
_EPS = 2.220446049250313e-16


# -- stepsize rules and stopping ----------------------------------------------


@dataclass(frozen=True)
class ConstantStep:
    """Fixed stepsize, normally 1/L."""
    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError("stepsize must be positive and finite")


@dataclass(frozen=True)
class BacktrackingStep:
    """Backtracking search: candidate min(s, theta * previous), contracted
    by eta until the smooth part satisfies its decrease condition.

    s must lie in (0, 2/L); theta >= 1 warm-starts from the previous
    accepted stepsize (theta = 1 disables growth).
    """
    s: float
    eta: float = 0.9
    theta: float = 1.0

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError("s must be positive and finite")
        if not (0.0 < self.eta < 1.0):
            raise ValueError("eta must lie in (0, 1)")
        if self.theta < 1.0:
            raise ValueError("theta must be at least 1")


@dataclass(frozen=True)
class StoppingCriterion:
    grad_map_tol: float = 1e-7
    max_iter: int = 5000
    cost_change_tol: Optional[float] = None

    def __post_init__(self):
        if self.grad_map_tol <= 0:
            raise ValueError("grad_map_tol must be positive")
        if self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")
        if self.cost_change_tol is not None and self.cost_change_tol <= 0:
            raise ValueError("cost_change_tol must be positive")


@dataclass
class SolverTrace:
    """Complete record of one solver run.

    costs has one entry per visited point (length iterations + 1); the
    per-iteration lists are aligned with the step taken FROM costs[k].
    grad_step_lengths records dist(p, z_p), the smooth-step displacement
    before the prox. decrease_slacks stores the margin by which the
    composite decrease inequality held; g_decrease_slacks the margin of
    the smooth part's own decrease condition at the accepted stepsize.
    alpha and beta summarize the stepsize rule relative to the problem's
    Lipschitz constant (lambda*L bounds for rate envelopes).
    """
    method: str
    costs: list = field(default_factory=list)
    lambdas: list = field(default_factory=list)
    step_lengths: list = field(default_factory=list)
    grad_step_lengths: list = field(default_factory=list)
    grad_map_norms: list = field(default_factory=list)
    decrease_slacks: list = field(default_factory=list)
    g_decrease_slacks: list = field(default_factory=list)
    backtrack_counts: list = field(default_factory=list)
    iterates: list = field(default_factory=list)
    final_point: Optional[ManifoldPoint] = None
    converged: bool = False
    prox_clean: bool = True
    wall_time: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    config: dict = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return len(self.lambdas)

    @property
    def final_cost(self) -> float:
        return self.costs[-1]


# -- elementary steps ---------------------------------------------------------


def gradient_step(problem: SplitProblem, lam: float,
                  p: ManifoldPoint) -> ManifoldPoint:
    """exp_p(-lam * grad g(p))."""
    if lam <= 0:
        raise ValueError("stepsize must be positive")
    geom = problem.geometry
    grad = problem.g_gradient(p)
    return geom.exp(p, geom.scale_tangent(grad, -lam))


def crpg_iterate(problem: SplitProblem, lam: float,
                 p: ManifoldPoint) -> ManifoldPoint:
    """One proximal gradient step: prox after the smooth step."""
    return problem.h_prox(lam, gradient_step(problem, lam, p))


def gradient_mapping_norm(problem: SplitProblem, lam: float,
                          p: ManifoldPoint, p_next: ManifoldPoint) -> float:
    """dist(p, p_next)/lam: zero exactly at fixed points of the update,
    and equal to the gradient norm when h vanishes."""
    if lam <= 0:
        raise ValueError("stepsize must be positive")
    return problem.geometry.dist(p, p_next) / lam


def _smooth_step(problem, lam, p, grad):
    geom = problem.geometry
    z = geom.exp(p, geom.scale_tangent(grad, -lam))
    p_next = problem.h_prox(lam, z)
    return z, p_next


def _backtrack(problem, k, p, prev_lambda, rule, g_p, grad):
    """Candidate loop of the backtracking search. The gradient is computed
    once by the caller and reused for every candidate. Returns the accepted
    stepsize together with the points and values already computed at it."""
    geom = problem.geometry
    lam = rule.s if (k == 0 or prev_lambda is None) \
        else min(rule.s, rule.theta * prev_lambda)
    contractions = 0
    # Near stationarity the true decrease falls below the float roundoff
    # of g itself; without a machine-precision guard the test can then
    # fail at every contraction even though it holds exactly.
    guard = 64.0 * _EPS * (1.0 + abs(g_p))
    while True:
        z, p_next = _smooth_step(problem, lam, p, grad)
        g_next = problem.g_value(p_next)
        step = geom.dist(p, p_next)
        bound = g_p + geom.inner(p, grad, geom.log(p, p_next)) \
            + step * step / (2.0 * lam)
        if g_next <= bound + guard:
            return lam, z, p_next, g_next, step, contractions
        contractions += 1
        if contractions > _BACKTRACK_CAP:
            raise RuntimeError(
                "backtracking failed to satisfy the decrease condition "
                "after %d contractions" % _BACKTRACK_CAP)
        lam *= rule.eta


def backtrack(problem: SplitProblem, k: int, p: ManifoldPoint,
              prev_lambda: Optional[float], rule: BacktrackingStep) -> float:
    """Run the backtracking search at p and return the accepted stepsize.

    The accepted value always lies in [min(s, eta/L), s] when the
    problem's Lipschitz constant is valid on the segment searched.
    """
    g_p = problem.g_value(p)
    grad = problem.g_gradient(p)
    lam, _, _, _, _, _ = _backtrack(problem, k, p, prev_lambda, rule,
                                    g_p, grad)
    return lam


# -- proximal gradient driver -------------------------------------------------


def crpg_solve(problem: SplitProblem, p0: ManifoldPoint, rule,
               stop: Optional[StoppingCriterion] = None) -> SolverTrace:
    """Proximal gradient iteration from p0 under the given stepsize rule.

    Stops when the gradient-mapping norm falls below tolerance, when the
    cost change falls below cost_change_tol (if set), or at max_iter.
    Non-convergence is reported through the trace's converged flag, never
    raised. The trace records every visited point.
    """
    if stop is None:
        stop = StoppingCriterion()
    geom = problem.geometry
    if p0.geometry != geom:
        raise ValueError("start point lives on a different geometry")
    L = problem.lipschitz
    if isinstance(rule, BacktrackingStep):
        if rule.s >= 2.0 / L:
            raise ValueError("s must be less than 2/L")
        method = "crpg-backtracking"
        alpha = rule.s * L
        beta = min(rule.s * L, rule.eta)
        cfg = {"rule": "backtracking", "s": rule.s, "eta": rule.eta,
               "theta": rule.theta}
    elif isinstance(rule, ConstantStep):
        method = "crpg-constant"
        alpha = beta = rule.lam * L
        cfg = {"rule": "constant", "lambda": rule.lam}
    else:
        raise TypeError("unknown stepsize rule: %r" % (rule,))

    g_p = problem.g_value(p0)
    h_p = problem.h_value(p0)
    if not math.isfinite(g_p + h_p):
        raise ValueError("start point must have finite objective value")

    problem.prox_events.clear()
    trace = SolverTrace(method=method, alpha=alpha, beta=beta)
    trace.config = dict(cfg, lipschitz=L,
                        grad_map_tol=stop.grad_map_tol,
                        max_iter=stop.max_iter,
                        cost_change_tol=stop.cost_change_tol)
    tic = time.perf_counter()

    p = p0
    f_p = g_p + h_p
    trace.costs.append(f_p)
    trace.iterates.append(p.coords)
    prev_lambda = None

    for k in range(stop.max_iter):
        grad = problem.g_gradient(p)
        if isinstance(rule, ConstantStep):
            lam = rule.lam
            z, p_next = _smooth_step(problem, lam, p, grad)
            g_next = problem.g_value(p_next)
            step = geom.dist(p, p_next)
            contractions = 0
        else:
            lam, z, p_next, g_next, step, contractions = _backtrack(
                problem, k, p, prev_lambda, rule, g_p, grad)
        h_next = problem.h_value(p_next)
        f_next = g_next + h_next

        d_grad = geom.dist(p, z)
        gm = step / lam
        g_bound = g_p + geom.inner(p, grad, geom.log(p, p_next)) \
            + step * step / (2.0 * lam)
        decrease_slack = (f_p - f_next) \
            - (2.0 - lam * L) / (2.0 * lam) * step * step

        trace.lambdas.append(lam)
        trace.step_lengths.append(step)
        trace.grad_step_lengths.append(d_grad)
        trace.grad_map_norms.append(gm)
        trace.decrease_slacks.append(decrease_slack)
        trace.g_decrease_slacks.append(g_bound - g_next)
        trace.backtrack_counts.append(contractions)
        trace.costs.append(f_next)
        trace.iterates.append(p_next.coords)

        cost_change = f_p - f_next
        p, f_p, g_p = p_next, f_next, g_next
        prev_lambda = lam
        if gm < stop.grad_map_tol:
            trace.converged = True
            break
        if stop.cost_change_tol is not None \
                and abs(cost_change) < stop.cost_change_tol:
            trace.converged = True
            break

    trace.final_point = p
    trace.prox_clean = all(problem.prox_events) \
        if problem.prox_events else True
    trace.wall_time = time.perf_counter() - tic
    return trace


# -- cyclic proximal point ----------------------------------------------------


def cppa_solve(cloud: DataCloud, extra_prox, p0: ManifoldPoint,
               lam0: float = 1.0,
               stop: Optional[StoppingCriterion] = None,
               extra_value=None) -> SolverTrace:
    """Cyclic proximal point method on the mean-squared-distance energy,
    optionally with one extra prox term applied once per cycle.

    Cycle k uses stepsize lam0/(k+1) and visits the data terms in index
    order, then the extra term. Stops when the cost change between cycle
    ends falls below tolerance (default 1e-7) or at max_iter cycles.
    Per-cycle records reuse the trace layout: step_lengths holds the
    whole-cycle displacement, grad_map_norms displacement/stepsize, and
    the decrease-slack columns are not meaningful here (NaN).
    """
    if lam0 <= 0:
        raise ValueError("lam0 must be positive")
    if stop is None:
        stop = StoppingCriterion()
    cost_tol = stop.cost_change_tol \
        if stop.cost_change_tol is not None else 1e-7
    geom = cloud.geometry
    if p0.geometry != geom:
        raise ValueError("start point lives on a different geometry")
    n = cloud.size
    fast = cloud.stack is not None

    def cost_at(point):
        c = frechet_value(cloud, point)
        if extra_value is not None:
            c += extra_value(point)
        return c

    trace = SolverTrace(method="cppa")
    trace.config = {"rule": "cppa", "lambda0": lam0,
                    "cost_change_tol": cost_tol, "max_iter": stop.max_iter}
    tic = time.perf_counter()

    p = p0
    f_p = cost_at(p)
    trace.costs.append(f_p)
    trace.iterates.append(p.coords)

    for k in range(stop.max_iter):
        lam_k = lam0 / (k + 1.0)
        w = lam_k / n
        if fast:
            x = kernels.cppa_cycle(cloud.stack, p.coords, w / (1.0 + w))
            p_next = ManifoldPoint(geom, x)
        else:
            p_next = p
            for q in cloud.points:
                p_next = prox_sq_distance(geom, q, 1.0 / n, lam_k, p_next)
        if extra_prox is not None:
            p_next = extra_prox(lam_k, p_next)
        f_next = cost_at(p_next)
        moved = geom.dist(p, p_next)

        trace.lambdas.append(lam_k)
        trace.step_lengths.append(moved)
        trace.grad_step_lengths.append(moved)
        trace.grad_map_norms.append(moved / lam_k)
        trace.decrease_slacks.append(math.nan)
        trace.g_decrease_slacks.append(math.nan)
        trace.backtrack_counts.append(0)
        trace.costs.append(f_next)
        trace.iterates.append(p_next.coords)

        change = abs(f_p - f_next)
        p, f_p = p_next, f_next
        if change < cost_tol:
            trace.converged = True
            break

    trace.final_point = p
    trace.wall_time = time.perf_counter() - tic
    return trace


# -- projected gradient -------------------------------------------------------


def pga_solve(problem: SplitProblem, p0: ManifoldPoint,
              lam: Optional[float] = None,
              stop: Optional[StoppingCriterion] = None) -> SolverTrace:
    """Projected gradient on a ball-constrained problem: gradient step,
    then metric projection onto the ball. With the same constant stepsize
    this is the identical iteration to the proximal gradient method with
    the ball indicator, and it runs through the same code path."""
    if problem.ball is None:
        raise ValueError("pga_solve needs a problem with a ball constraint")
    if lam is None:
        lam = 1.0 / problem.lipschitz
    trace = crpg_solve(problem, p0, ConstantStep(lam), stop)
    trace.method = "pga"
    trace.config["rule"] = "pga"
    return trace

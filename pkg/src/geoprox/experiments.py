"""Benchmark experiment runners.

Each runner builds deterministic random instances from the config seed,
runs the requested solvers, evaluates the theory checks on the recorded
traces, and writes CSV files. Runners return a result object so tests
can assert on traces and reports without re-parsing the CSVs.

Seeding: every instance derives its generator from
numpy.random.default_rng([seed, experiment_tag, ...indices]), so runs are
reproducible per instance and independent across instances.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .checks import (PROX_GRAD_VARIANTS, build_envelope, check_convex_rate,
                     check_prox_grad_inequality, check_strongly_convex_rate,
                     check_sufficient_decrease)
from .csvio import write_csv
from .manifolds.base import ManifoldPoint, TangentVector
from .manifolds.euclidean import EuclideanGeometry
from .manifolds.hyperboloid import HyperbolicGeometry, hyp_sample_intrinsic
from .manifolds.spd import SpdGeometry
from .objectives import (DataCloud, SplitProblem, constrained_mean_problem,
                         frechet_lipschitz, logdet4_lipschitz,
                         sparse_mean_problem, spd_quartic_problem)
from .proxops import prox_l1_hyperbolic
from .solvers import (BacktrackingStep, ConstantStep, StoppingCriterion,
                      cppa_solve, crpg_solve, pga_solve)

SPARSE_CLOUD_SIZE = 1000
CONSTRAINED_CLOUD_SIZE = 400
SPD_LIPSCHITZ_SAMPLES = 1000
LIPSCHITZ_FLOOR = 1e-6
SPARSITY_EPS = 1e-8
EXPERIMENTS = ("spd-convex", "sparse-mean", "constrained-mean",
               "check-inequalities")


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the field."""


@dataclass
class ExperimentConfig:
    experiment: str
    dimensions: tuple = ()
    seed: int = 12345
    tau: float = 0.5
    mu: tuple = (0.1, 0.5, 1.0)
    radius: float = 1.0
    stepsize: str = "both"
    s: Optional[float] = None
    eta: Optional[float] = None
    theta: Optional[float] = None
    max_iter: Optional[int] = None
    tol: float = 1e-7
    runs: int = 3
    output: str = "results"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("experiment must be one of %s, got %r"
                              % (", ".join(EXPERIMENTS), self.experiment))
        if not self.dimensions:
            defaults = {"spd-convex": (2, 3, 4, 5), "sparse-mean": (2,),
                        "constrained-mean": (10,),
                        "check-inequalities": ()}
            self.dimensions = defaults[self.experiment]
        self.dimensions = tuple(int(d) for d in self.dimensions)
        for d in self.dimensions:
            if d < 1:
                raise ConfigError("dimension must be >= 1, got %d" % d)
        self.mu = tuple(float(m) for m in self.mu)
        for m in self.mu:
            if m < 0:
                raise ConfigError("mu must be nonnegative, got %g" % m)
        if self.tau <= 0:
            raise ConfigError("tau must be positive, got %g" % self.tau)
        if self.radius <= 0:
            raise ConfigError("radius must be positive, got %g"
                              % self.radius)
        if self.stepsize not in ("constant", "backtracking", "both"):
            raise ConfigError("stepsize must be constant, backtracking or "
                              "both, got %r" % (self.stepsize,))
        if self.s is not None and self.s <= 0:
            raise ConfigError("s must be positive, got %g" % self.s)
        if self.eta is not None and not (0.0 < self.eta < 1.0):
            raise ConfigError("eta must lie in (0, 1), got %g" % self.eta)
        if self.theta is not None and self.theta < 1.0:
            raise ConfigError("theta must be >= 1, got %g" % self.theta)
        if self.max_iter is not None and self.max_iter < 1:
            raise ConfigError("max-iter must be >= 1, got %d"
                              % self.max_iter)
        if self.tol <= 0:
            raise ConfigError("tol must be positive, got %g" % self.tol)
        if self.runs < 1:
            raise ConfigError("runs must be >= 1, got %d" % self.runs)

    def echo(self, **extra) -> dict:
        out = {"experiment": self.experiment,
               "dimensions": " ".join(str(d) for d in self.dimensions),
               "seed": self.seed, "tau": self.tau,
               "mu": " ".join("%g" % m for m in self.mu),
               "radius": self.radius, "stepsize": self.stepsize,
               "s": "auto" if self.s is None else self.s,
               "eta": "auto" if self.eta is None else self.eta,
               "theta": "auto" if self.theta is None else self.theta,
               "max_iter": "auto" if self.max_iter is None else self.max_iter,
               "tol": self.tol, "runs": self.runs}
        out.update(extra)
        return out


@dataclass
class ExperimentResult:
    name: str
    csv_paths: list = field(default_factory=list)
    all_converged: bool = True
    violations: int = 0
    instances: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def _modes(config):
    if config.stepsize == "both":
        return ("constant", "backtracking")
    return (config.stepsize,)


def _best_of(traces: dict):
    """Best observed cost across the traces and the point attaining it.

    Costs are monotone for the proximal gradient runs, so the attaining
    iterate is that run's final point."""
    f_best = math.inf
    best_trace = None
    for tr in traces.values():
        m = min(tr.costs)
        if m < f_best:
            f_best, best_trace = m, tr
    return f_best, best_trace.final_point


# -- quartic log-det on SPD ---------------------------------------------------


@dataclass
class SpdInstance:
    n: int
    manifold_dim: int
    lipschitz: float
    problem: SplitProblem
    p0: ManifoldPoint
    q_bar: ManifoldPoint
    traces: dict
    f_best: float
    envelopes: dict
    rate_reports: dict


def run_spd_convex(config: ExperimentConfig) -> ExperimentResult:
    """Quartic log-determinant plus a distance pull, constant versus
    backtracked stepsizes, one instance per matrix size."""
    max_iter = config.max_iter if config.max_iter is not None else 20000
    result = ExperimentResult("spd-convex")
    summary_rows = []
    walltimes = []
    curve_files = []

    for n in config.dimensions:
        rng = np.random.default_rng([config.seed, 1, n])
        geom = SpdGeometry(n)
        q_bar = geom.random_point(rng, scale=1.0)
        p0 = geom.random_point(rng, scale=1.0)
        ball_radius = 2.0 * geom.dist(p0, q_bar)
        lip = max(logdet4_lipschitz(geom, p0, ball_radius,
                                    SPD_LIPSCHITZ_SAMPLES, rng),
                  LIPSCHITZ_FLOOR)
        problem = spd_quartic_problem(geom, q_bar, config.tau, lip)
        lam = 1.0 / lip
        stop = StoppingCriterion(grad_map_tol=config.tol, max_iter=max_iter)

        traces = {}
        for mode in _modes(config):
            if mode == "constant":
                rule = ConstantStep(lam)
            else:
                rule = BacktrackingStep(
                    s=config.s if config.s is not None else 1.5 * lam,
                    eta=config.eta if config.eta is not None else 0.9,
                    theta=config.theta if config.theta is not None else 2.0)
            traces[mode] = crpg_solve(problem, p0, rule, stop)

        f_best, p_star = _best_of(traces)
        envelopes, reports = {}, {}
        for mode, tr in traces.items():
            env = build_envelope(tr, problem, p_star=p_star)
            envelopes[mode] = env
            reports[mode] = check_convex_rate(tr, env, f_best,
                                              p_star=p_star)
            if not reports[mode].holds:
                result.violations += 1
            summary_rows.append((n, n * (n + 1) // 2, mode, tr.iterations,
                                 tr.converged, tr.final_cost,
                                 tr.grad_map_norms[-1] if tr.iterations
                                 else 0.0,
                                 sum(tr.backtrack_counts)))
            walltimes.append(("n=%d,%s" % (n, mode), tr.wall_time))
            if not (tr.converged and tr.prox_clean):
                result.all_converged = False

            curve_rows = [(k, float(c) - f_best)
                          for k, c in enumerate(tr.costs)]
            path = os.path.join(config.output,
                                "spd-convex-curve-n%d-%s.csv" % (n, mode))
            write_csv(path, ("k", "delta"), curve_rows,
                      config=config.echo(instance_n=n, mode=mode,
                                         lipschitz=lip, f_best=f_best))
            curve_files.append(path)

        result.instances.append(SpdInstance(
            n, n * (n + 1) // 2, lip, problem, p0, q_bar, traces,
            f_best, envelopes, reports))

    summary = os.path.join(config.output, "spd-convex-summary.csv")
    write_csv(summary,
              ("n", "manifold_dim", "mode", "iterations", "converged",
               "final_objective", "final_grad_map", "backtracks_total"),
              summary_rows, config=config.echo(), walltimes=walltimes)
    result.csv_paths = [summary] + curve_files
    return result


# -- sparse Frechet mean on the hyperboloid -----------------------------------


@dataclass
class SparseMeanRun:
    n: int
    mu: float
    run: int
    lipschitz: float
    problem: SplitProblem
    p0: ManifoldPoint
    cloud: DataCloud
    traces: dict
    sparsity: dict
    f_best: float


def _sparsity(point: ManifoldPoint) -> int:
    return int((np.abs(point.coords) < SPARSITY_EPS).sum())


def run_sparse_mean(config: ExperimentConfig) -> ExperimentResult:
    """l1-regularized Frechet mean: proximal gradient (both stepsize
    modes) against the cyclic proximal point method, averaged over runs.

    Per run, the cloud/start instance is shared across the whole mu grid
    so sparsity can be compared along it.
    """
    max_iter = config.max_iter if config.max_iter is not None else 5000
    result = ExperimentResult("sparse-mean")
    run_rows = []
    walltimes = []
    sums = {}

    for n in config.dimensions:
        geom = HyperbolicGeometry(n)
        for run_idx in range(config.runs):
            rng = np.random.default_rng([config.seed, 2, n, run_idx])
            anchor = geom.random_point(rng, 1.0)
            cloud = DataCloud.from_points(
                hyp_sample_intrinsic(geom, anchor, 1.0, rng)
                for _ in range(SPARSE_CLOUD_SIZE))
            p0 = hyp_sample_intrinsic(geom, anchor, 1.0, rng)
            d_max = max(float(kernels.dist_many(cloud.stack,
                                                p0.coords).max()),
                        geom.dist(p0, anchor))
            lip = frechet_lipschitz(cloud, 2.0 * d_max)
            lam = 1.0 / lip
            stop = StoppingCriterion(grad_map_tol=config.tol,
                                     max_iter=max_iter)

            for mu in config.mu:
                problem = sparse_mean_problem(cloud, mu, lip)
                traces = {}
                for mode in _modes(config):
                    if mode == "constant":
                        rule = ConstantStep(lam)
                    else:
                        rule = BacktrackingStep(
                            s=config.s if config.s is not None
                            else 1.5 * lam,
                            eta=config.eta if config.eta is not None
                            else 0.9,
                            theta=config.theta if config.theta is not None
                            else 2.0)
                    traces["crpg-" + mode] = crpg_solve(problem, p0, rule,
                                                        stop)

                def l1_prox_term(lam_k, p, _mu=mu):
                    return prox_l1_hyperbolic(p, lam_k * _mu).point

                def l1_value_term(p, _mu=mu):
                    return _mu * float(np.abs(p.coords).sum())

                # CPPA's diminishing steps leave it O(1/k) above the
                # optimum when stopped on cost change, so its tolerance
                # sits two orders below the gradient-mapping tolerance to
                # keep the cross-solver objective gap well inside 1e-5.
                traces["cppa"] = cppa_solve(
                    cloud, l1_prox_term, p0, lam0=1.0,
                    stop=StoppingCriterion(grad_map_tol=config.tol,
                                           max_iter=max_iter,
                                           cost_change_tol=1e-2 * config.tol),
                    extra_value=l1_value_term)

                f_best = min(min(tr.costs) for tr in traces.values())
                sparsity = {name: _sparsity(tr.final_point)
                            for name, tr in traces.items()}
                for name, tr in traces.items():
                    run_rows.append((n, mu, run_idx, name, tr.iterations,
                                     tr.converged, tr.final_cost,
                                     sparsity[name]))
                    walltimes.append(("n=%d,mu=%g,run=%d,%s"
                                      % (n, mu, run_idx, name),
                                      tr.wall_time))
                    key = (n, mu, name)
                    agg = sums.setdefault(key, [0, 0.0, 0.0, 0.0])
                    agg[0] += 1
                    agg[1] += tr.iterations
                    agg[2] += tr.final_cost
                    agg[3] += sparsity[name]
                    if not (tr.converged and tr.prox_clean):
                        result.all_converged = False

                result.instances.append(SparseMeanRun(
                    n, mu, run_idx, lip, problem, p0, cloud, traces,
                    sparsity, f_best))

    # sparsity should be nondecreasing along the mu grid per (n, run, solver)
    monotone = True
    by_key = {}
    for inst in result.instances:
        for name, count in inst.sparsity.items():
            by_key.setdefault((inst.n, inst.run, name), []).append(
                (inst.mu, count))
    for series in by_key.values():
        series.sort()
        counts = [c for _, c in series]
        if any(b < a for a, b in zip(counts, counts[1:])):
            monotone = False
    result.details["sparsity_monotone"] = monotone

    runs_path = os.path.join(config.output, "sparse-mean-runs.csv")
    write_csv(runs_path,
              ("n", "mu", "run", "solver", "iterations", "converged",
               "final_objective", "sparsity"),
              run_rows, config=config.echo(sampler="tangent-gaussian",
                                           cloud_size=SPARSE_CLOUD_SIZE),
              walltimes=walltimes)
    summary_rows = [(n, mu, name, agg[0], agg[1] / agg[0], agg[2] / agg[0],
                     agg[3] / agg[0])
                    for (n, mu, name), agg in sorted(sums.items())]
    summary_path = os.path.join(config.output, "sparse-mean-summary.csv")
    write_csv(summary_path,
              ("n", "mu", "solver", "runs", "avg_iterations",
               "avg_final_objective", "avg_sparsity"),
              summary_rows,
              config=config.echo(sampler="tangent-gaussian",
                                 cloud_size=SPARSE_CLOUD_SIZE))
    result.csv_paths = [runs_path, summary_path]
    return result


# -- ball-constrained Frechet mean --------------------------------------------


@dataclass
class ConstrainedInstance:
    n: int
    radius: float
    lipschitz: float
    problem: SplitProblem
    center: ManifoldPoint
    p0: ManifoldPoint
    cloud: DataCloud
    traces: dict
    feasibility: dict
    iterate_gap: float
    f_best: float
    envelopes: dict
    rate_reports: dict


def run_constrained_mean(config: ExperimentConfig) -> ExperimentResult:
    """Frechet mean constrained to a geodesic ball: proximal gradient
    (both modes) against the projected gradient method.

    The ball center sits 1.5 away from the cloud anchor so the
    unconstrained mean falls outside the (radius 1.0 by default) ball and
    the constraint is active at the solution; the start is the center.
    """
    max_iter = config.max_iter if config.max_iter is not None else 5000
    result = ExperimentResult("constrained-mean")
    rows = []
    walltimes = []

    for n in config.dimensions:
        rng = np.random.default_rng([config.seed, 3, n])
        geom = HyperbolicGeometry(n)
        anchor = geom.random_point(rng, 1.0)
        cloud = DataCloud.from_points(
            hyp_sample_intrinsic(geom, anchor, 1.0, rng)
            for _ in range(CONSTRAINED_CLOUD_SIZE))
        direction = geom.random_tangent(anchor, rng, 1.0)
        nrm = geom.norm(anchor, direction)
        center = geom.exp(anchor, geom.scale_tangent(direction, 1.5 / nrm))
        p0 = center
        d_max = max(float(kernels.dist_many(cloud.stack,
                                            p0.coords).max()),
                    geom.dist(p0, anchor))
        lip = frechet_lipschitz(cloud, 2.0 * d_max)
        lam = 1.0 / lip
        problem = constrained_mean_problem(cloud, center, config.radius,
                                           lip)
        stop = StoppingCriterion(grad_map_tol=config.tol,
                                 max_iter=max_iter)

        traces = {}
        for mode in _modes(config):
            if mode == "constant":
                rule = ConstantStep(lam)
            else:
                rule = BacktrackingStep(
                    s=config.s if config.s is not None else lam,
                    eta=config.eta if config.eta is not None else 0.995,
                    theta=config.theta if config.theta is not None else 1.0)
            traces["crpg-" + mode] = crpg_solve(problem, p0, rule, stop)
        traces["pga"] = pga_solve(problem, p0, lam, stop)

        gap = 0.0
        a = traces.get("crpg-constant")
        b = traces["pga"]
        if a is not None:
            for xa, xb in zip(a.iterates, b.iterates):
                gap = max(gap, float(np.abs(xa - xb).max()))
            if len(a.iterates) != len(b.iterates):
                gap = math.inf

        f_best, _ = _best_of(traces)
        feasibility, envelopes, reports = {}, {}, {}
        for name, tr in traces.items():
            feasibility[name] = geom.dist(center, tr.final_point)
            env = build_envelope(tr, problem, kind="linear")
            envelopes[name] = env
            reports[name] = check_strongly_convex_rate(tr, env)
            if not reports[name].holds:
                result.violations += 1
            rows.append((n, name, tr.iterations, tr.converged,
                         tr.final_cost, feasibility[name]))
            walltimes.append(("n=%d,%s" % (n, name), tr.wall_time))
            if not (tr.converged and tr.prox_clean):
                result.all_converged = False

        result.instances.append(ConstrainedInstance(
            n, config.radius, lip, problem, center, p0, cloud, traces,
            feasibility, gap, f_best, envelopes, reports))

    path = os.path.join(config.output, "constrained-mean-summary.csv")
    write_csv(path,
              ("n", "solver", "iterations", "converged", "final_objective",
               "feasibility_dist"),
              rows, config=config.echo(cloud_size=CONSTRAINED_CLOUD_SIZE),
              walltimes=walltimes)
    result.csv_paths = [path]
    return result


# -- inequality suite ---------------------------------------------------------


class _SlackStat:
    def __init__(self):
        self.evaluated = 0
        self.applicable = 0
        self.violations = 0
        self.min_slack = math.inf
        self.sum_slack = 0.0

    def add(self, report):
        self.evaluated += 1
        if report.holds is None:
            return
        self.applicable += 1
        self.sum_slack += report.slack
        self.min_slack = min(self.min_slack, report.slack)
        if not report.holds:
            self.violations += 1

    def row(self, name):
        mean = self.sum_slack / self.applicable if self.applicable else 0.0
        min_slack = self.min_slack if self.applicable else 0.0
        return (name, self.evaluated, self.applicable, self.violations,
                min_slack, mean)


def _flat_quadratic_problem(rng, dim=4):
    geom = EuclideanGeometry(dim)
    m = rng.normal(size=(dim, dim))
    quad = m.T @ m / dim + 0.2 * np.eye(dim)
    a = rng.normal(size=dim)
    b = rng.normal(size=dim)
    weight = 0.7
    lip = float(np.linalg.eigvalsh(quad).max())

    def g_value(p):
        r = p.coords - a
        return 0.5 * float(r @ quad @ r)

    def g_gradient(p):
        return TangentVector(p, quad @ (p.coords - a))

    def h_value(p):
        return weight * float(np.linalg.norm(p.coords - b))

    def h_prox(lam, p):
        z = p.coords
        gap = z - b
        d = float(np.linalg.norm(gap))
        if d <= lam * weight:
            return ManifoldPoint(geom, b.copy())
        return ManifoldPoint(geom, z - (lam * weight / d) * gap)

    problem = SplitProblem(geom, g_value, g_gradient, h_value, h_prox,
                           lip, name="flat-quadratic")
    return problem, quad, a, b, weight, lip


def _flat_reference_slack(quad, a, b, weight, lam, p, q):
    """The flat-space prox-grad inequality assembled with plain array
    arithmetic, independent of the geometry layer. All curvature
    coefficients are 1, so the three variants coincide."""
    grad_q = quad @ (q - a)
    z = q - lam * grad_q
    gap = z - b
    d = float(np.linalg.norm(gap))
    if d <= lam * weight:
        t_vec = b.copy()
    else:
        t_vec = z - (lam * weight / d) * gap

    def g_of(x):
        r = x - a
        return 0.5 * float(r @ quad @ r)

    def f_of(x):
        return g_of(x) + weight * float(np.linalg.norm(x - b))

    d_qt = float(np.linalg.norm(t_vec - q))
    g_cond = g_of(q) + float(grad_q @ (t_vec - q)) \
        + d_qt * d_qt / (2.0 * lam) - g_of(t_vec)
    ell = g_of(p) - g_of(q) - float(grad_q @ (p - q))
    lhs = f_of(p) - f_of(t_vec)
    rhs = ell \
        + float(np.linalg.norm(p - t_vec)) ** 2 / (2.0 * lam) \
        - float(np.linalg.norm(p - q)) ** 2 / (2.0 * lam)
    return lhs - rhs, g_cond


def run_inequality_suite(config: ExperimentConfig) -> ExperimentResult:
    """Bulk evaluation of the prox-grad inequalities and decrease
    conditions on random instances over hyperbolic space and SPD
    matrices, plus a flat-space sanity block where every slack is
    compared against an independently assembled Euclidean form."""
    rng = np.random.default_rng([config.seed, 4])
    result = ExperimentResult("check-inequalities")
    n_triples = 500
    stats = {}

    def stat(name):
        return stats.setdefault(name, _SlackStat())

    # hyperbolic instance: Frechet energy + l1 term, tight prox
    geom_h = HyperbolicGeometry(3)
    anchor = geom_h.random_point(rng, 1.0)
    cloud = DataCloud.from_points(
        hyp_sample_intrinsic(geom_h, anchor, 1.0, rng) for _ in range(20))
    spread = float(kernels.dist_many(cloud.stack, anchor.coords).max())
    lip_h = frechet_lipschitz(cloud, 2.0 * (spread + 4.0))
    problem_h = sparse_mean_problem(cloud, 0.5, lip_h, prox_tol=1e-12,
                                    prox_max_iter=100)

    # SPD instance: quartic log-det + distance pull
    geom_s = SpdGeometry(2)
    q_bar = geom_s.random_point(rng, scale=1.5)
    p_ref = geom_s.identity()
    lip_s = max(logdet4_lipschitz(geom_s, p_ref, 4.0, 300, rng),
                LIPSCHITZ_FLOOR)
    problem_s = spd_quartic_problem(geom_s, q_bar, config.tau, lip_s)

    for label, geom, problem, scale in (
            ("hyperbolic", geom_h, problem_h, 1.0),
            ("spd", geom_s, problem_s, 1.5)):
        if label == "hyperbolic":
            def draw(g=geom, a=anchor, s=scale):
                return hyp_sample_intrinsic(g, a, s, rng)
        else:
            def draw(g=geom, s=scale):
                return g.random_point(rng, s)
        for _ in range(n_triples):
            p = draw()
            q = draw()
            lam = rng.uniform(0.15, 1.3) / problem.lipschitz
            for variant in PROX_GRAD_VARIANTS:
                rep = check_prox_grad_inequality(problem, p, q, lam,
                                                 variant)
                stat("%s/%s" % (label, variant)).add(rep)

        for _ in range(n_triples):
            p = draw()
            lam = rng.uniform(0.2, 1.0) / problem.lipschitz
            rep = check_sufficient_decrease(problem, p, lam)
            stat(label + "/sufficient-decrease").add(rep)
            if rep.context["g_condition_holds"]:
                second = InequalityReportProxy(rep)
                stat(label + "/sufficient-decrease-second-form").add(second)

    # flat sanity block: checker slack vs independent Euclidean assembly
    flat_max_diff = 0.0
    flat_stat = stat("flat/prox-grad")
    for _ in range(200):
        problem_f, quad, a, b, weight, lip_f = _flat_quadratic_problem(rng)
        geom_f = problem_f.geometry
        p = geom_f.point(rng.normal(scale=1.5, size=4))
        q = geom_f.point(rng.normal(scale=1.5, size=4))
        lam = rng.uniform(0.2, 1.0) / lip_f
        ref_slack, ref_gcond = _flat_reference_slack(
            quad, a, b, weight, lam, p.coords, q.coords)
        for variant in PROX_GRAD_VARIANTS:
            rep = check_prox_grad_inequality(problem_f, p, q, lam, variant,
                                             curvature_override=(0.0, 0.0))
            flat_stat.add(rep)
            if rep.applicable:
                flat_max_diff = max(flat_max_diff,
                                    abs(rep.slack - ref_slack))
    result.details["flat_max_diff"] = flat_max_diff
    if flat_max_diff > 1e-10:
        result.violations += 1

    rows = [stats[name].row(name) for name in sorted(stats)]
    result.violations += sum(st.violations for st in stats.values())
    path = os.path.join(config.output, "inequality-suite.csv")
    write_csv(path,
              ("check", "evaluated", "applicable", "violations",
               "min_slack", "mean_slack"),
              rows, config=config.echo(triples=n_triples),
              extra_comments=["flat_max_diff=%.16e" % flat_max_diff])
    result.csv_paths = [path]
    result.details["stats"] = stats
    return result


class InequalityReportProxy:
    """Adapter presenting the second decrease form of a sufficient
    decrease report as its own report row."""

    def __init__(self, rep):
        self.slack = rep.context["slack2"]
        self.tolerance = rep.tolerance
        self.holds = self.slack >= -self.tolerance


RUNNERS = {"spd-convex": run_spd_convex,
           "sparse-mean": run_sparse_mean,
           "constrained-mean": run_constrained_mean,
           "check-inequalities": run_inequality_suite}

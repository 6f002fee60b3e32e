"""Inequality and rate oracles: slacks, applicability gating, envelopes."""

import math

import numpy as np
import pytest

from geoprox import (BASE_WEIGHTED, DISTANCE_ONLY, STEP_WEIGHTED,
                     PROX_GRAD_VARIANTS, BacktrackingStep, ConstantStep,
                     DataCloud, HyperbolicGeometry, InequalityReport,
                     RateEnvelope, SpdGeometry, StoppingCriterion,
                     build_envelope, check_convex_rate,
                     check_prox_grad_inequality, check_strongly_convex_rate,
                     check_sufficient_decrease, crpg_solve, frechet_gradient,
                     frechet_lipschitz, frechet_value, sparse_mean_problem,
                     spd_quartic_problem, triangle_diameter)
from geoprox.manifolds.euclidean import EuclideanGeometry
from geoprox.objectives import SplitProblem


def _sparse_problem(seed=0, mu=0.4, size=6):
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(seed)
    cloud = DataCloud.from_points(
        geom.random_point(rng, 1.0) for _ in range(size))
    return geom, rng, sparse_mean_problem(cloud, mu,
                                          frechet_lipschitz(cloud, 6.0))


def _spd_problem(seed=1):
    geom = SpdGeometry(2)
    rng = np.random.default_rng(seed)
    q_bar = geom.random_point(rng, 1.0)
    return geom, rng, spd_quartic_problem(geom, q_bar, 0.5, 60.0)


def test_report_holds_logic_and_validation():
    rep = InequalityReport("x", -1e-12, 1e-9, {})
    assert rep.holds is True
    rep = InequalityReport("x", -1e-6, 1e-9, {})
    assert rep.holds is False
    rep = InequalityReport("x", -1.0, 1e-9, {}, applicable=False)
    assert rep.holds is None
    with pytest.raises(ValueError):
        InequalityReport("x", math.nan, 1e-9, {})


def test_triangle_diameter_is_the_longest_side():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(2)
    a = geom.random_point(rng, 1.0)
    b = geom.random_point(rng, 1.0)
    c = geom.random_point(rng, 1.0)
    d = triangle_diameter(geom, a, b, c)
    assert d == max(geom.dist(a, b), geom.dist(a, c), geom.dist(b, c))


def test_sufficient_decrease_holds_along_a_run():
    geom, rng, prob = _sparse_problem(seed=3)
    p = geom.random_point(rng, 1.0)
    for lam in (0.1, 0.5 / prob.lipschitz, 1.0 / prob.lipschitz):
        rep = check_sufficient_decrease(prob, p, lam)
        assert rep.applicable and rep.holds
        ctx = rep.context
        for key in ("lambda", "f_p", "f_next", "step", "slack2", "g_slack",
                    "g_condition_holds"):
            assert key in ctx
        assert ctx["g_condition_holds"]


def test_sufficient_decrease_rejects_out_of_range_stepsizes():
    geom, rng, prob = _sparse_problem(seed=4)
    p = geom.random_point(rng, 1.0)
    with pytest.raises(ValueError):
        check_sufficient_decrease(prob, p, 0.0)
    with pytest.raises(ValueError):
        check_sufficient_decrease(prob, p, 2.0 / prob.lipschitz)


@pytest.mark.parametrize("variant", PROX_GRAD_VARIANTS)
def test_prox_grad_inequality_holds_on_random_triples(variant):
    geom, rng, prob = _sparse_problem(seed=5)
    lam_hi = 0.99 / prob.lipschitz
    for _ in range(100):
        p = geom.random_point(rng, 1.0)
        q = geom.random_point(rng, 1.0)
        lam = float(rng.uniform(0.05, lam_hi))
        rep = check_prox_grad_inequality(prob, p, q, lam, variant)
        assert rep.applicable
        assert rep.holds, (variant, rep.slack, rep.tolerance)


def test_prox_grad_inequality_on_spd_triples():
    geom, rng, prob = _spd_problem(seed=6)
    for variant in PROX_GRAD_VARIANTS:
        for _ in range(30):
            p = geom.random_point(rng, 1.0)
            q = geom.random_point(rng, 1.0)
            lam = float(rng.uniform(0.05, 0.9)) / prob.lipschitz
            rep = check_prox_grad_inequality(prob, p, q, lam, variant)
            if rep.applicable:
                assert rep.holds, (variant, rep.slack, rep.tolerance)


def test_distance_only_at_equal_points_reduces_to_half_quadratic():
    geom, rng, prob = _sparse_problem(seed=7)
    for _ in range(20):
        q = geom.random_point(rng, 1.0)
        lam = 0.3 / prob.lipschitz
        rep = check_prox_grad_inequality(prob, q, q, lam, DISTANCE_ONLY)
        base = check_sufficient_decrease(prob, q, lam)
        scale = 1.0 + abs(base.context["slack2"])
        assert abs(rep.slack - base.context["slack2"]) <= 1e-12 * scale


def test_flat_override_makes_all_variants_coincide():
    geom, rng, prob = _sparse_problem(seed=8)
    for _ in range(20):
        p = geom.random_point(rng, 1.0)
        q = geom.random_point(rng, 1.0)
        lam = 0.4 / prob.lipschitz
        slacks = [check_prox_grad_inequality(prob, p, q, lam, v,
                                             curvature_override=(0.0, 0.0)
                                             ).slack
                  for v in PROX_GRAD_VARIANTS]
        spread = max(slacks) - min(slacks)
        assert spread <= 1e-10 * (1.0 + max(abs(s) for s in slacks))


def test_flat_quadratic_meets_the_inequality_with_near_equality():
    # one-dimensional flat sanity case: g(x) = x^2/2, h = 0; every
    # curvature coefficient is 1 and the bound is tight up to roundoff
    geom = EuclideanGeometry(1)
    prob = SplitProblem(geom,
                        g_value=lambda p: 0.5 * float(p.coords[0] ** 2),
                        g_gradient=lambda p: geom.tangent(p, p.coords),
                        h_value=lambda p: 0.0,
                        h_prox=lambda lam, p: p,
                        lipschitz=1.0)
    p = geom.point([1.7])
    q = geom.point([-0.6])
    rep = check_prox_grad_inequality(prob, p, q, 1.0, BASE_WEIGHTED)
    assert rep.applicable and rep.holds
    assert abs(rep.slack) <= 1e-12


def test_precondition_failure_marks_report_inapplicable():
    # with lambda in (1/L, 2/L) the smooth decrease condition fails on a
    # flat quadratic, so the inequality must be gated off, not asserted
    geom = EuclideanGeometry(1)
    prob = SplitProblem(geom,
                        g_value=lambda p: 0.5 * float(p.coords[0] ** 2),
                        g_gradient=lambda p: geom.tangent(p, p.coords),
                        h_value=lambda p: 0.0,
                        h_prox=lambda lam, p: p,
                        lipschitz=1.0)
    p = geom.point([0.4])
    q = geom.point([2.0])
    rep = check_prox_grad_inequality(prob, p, q, 1.5, BASE_WEIGHTED)
    assert not rep.applicable
    assert rep.holds is None
    assert rep.context["precondition"] == "failed"


def test_prox_grad_inequality_validates_inputs():
    geom, rng, prob = _sparse_problem(seed=9)
    p = geom.random_point(rng, 1.0)
    with pytest.raises(ValueError):
        check_prox_grad_inequality(prob, p, p, 0.1, "mystery")
    with pytest.raises(ValueError):
        check_prox_grad_inequality(prob, p, p, 0.0, BASE_WEIGHTED)


def test_rate_envelope_validation():
    good = dict(kind="sublinear", beta=0.5, alpha=0.5, L=2.0, mu_bar=0.0,
                R_hat=1.0, R_alpha_hat=1.0, zeta1_at_R_alpha=1.2)
    RateEnvelope(**good)
    with pytest.raises(ValueError):
        RateEnvelope(**dict(good, kind="quadratic"))
    with pytest.raises(ValueError):
        RateEnvelope(**dict(good, beta=0.0))
    with pytest.raises(ValueError):
        RateEnvelope(**dict(good, mu_bar=-0.1))
    with pytest.raises(ValueError):
        RateEnvelope(**dict(good, R_hat=-1.0))


def _run_sparse(seed=10):
    geom, rng, prob = _sparse_problem(seed=seed)
    p0 = geom.apex()
    trace = crpg_solve(prob, p0, ConstantStep(1.0 / prob.lipschitz))
    assert trace.converged
    return geom, prob, trace


def test_build_envelope_brackets_the_run():
    geom, prob, trace = _run_sparse()
    env = build_envelope(trace, prob, kind="linear")
    assert env.alpha == trace.alpha and env.beta == trace.beta
    assert env.L == prob.lipschitz
    assert env.mu_bar == prob.strong_convexity
    # every observed displacement is inside the declared radii
    assert max(trace.grad_step_lengths) <= env.R_alpha_hat + 1e-15
    pts = [geom.point(c) for c in trace.iterates]
    dmax = max(geom.dist(pts[0], p) for p in pts)
    assert dmax <= env.R_hat + 1e-12
    assert env.zeta1_at_R_alpha >= 1.0


def test_build_envelope_rejects_out_of_range_alpha():
    geom, prob, trace = _run_sparse(seed=11)
    bad = type(trace)(method=trace.method, alpha=2.5, beta=trace.beta)
    bad.costs = trace.costs
    bad.iterates = trace.iterates
    bad.grad_step_lengths = trace.grad_step_lengths
    bad.final_point = trace.final_point
    with pytest.raises(ValueError):
        build_envelope(bad, prob)


def test_strongly_convex_rate_holds_on_a_sparse_run():
    geom, prob, trace = _run_sparse(seed=12)
    env = build_envelope(trace, prob, kind="linear")
    report = check_strongly_convex_rate(trace, env)
    assert report.holds
    rho_manual = 1.0 - min(
        env.beta * env.mu_bar / (4.0 * env.L * env.zeta1_at_R_alpha), 0.5)
    assert abs(report.details["rho"] - rho_manual) <= 1e-12
    assert report.details["rho"] < 1.0
    assert report.details["iterate_bound_min_slack"] \
        >= -report.details["tolerance"]


def test_strongly_convex_rate_needs_positive_modulus():
    geom, rng, prob = _spd_problem(seed=13)
    p0 = geom.identity()
    trace = crpg_solve(prob, p0, ConstantStep(1.0 / prob.lipschitz))
    env = build_envelope(trace, prob)
    with pytest.raises(ValueError):
        check_strongly_convex_rate(trace, env)


def test_convex_rate_holds_on_an_spd_run():
    geom, rng, prob = _spd_problem(seed=14)
    trace = crpg_solve(prob, geom.identity(),
                       ConstantStep(1.0 / prob.lipschitz))
    assert trace.converged
    env = build_envelope(trace, prob)
    report = check_convex_rate(trace, env, f_best=float(np.min(trace.costs)))
    assert report.holds
    d = report.details
    assert d["monotone_min_slack"] >= -1e-12
    tol = d["tolerance"]
    assert d["summed_min_slack"] == math.inf or d["summed_min_slack"] >= -tol
    assert d["envelope_min_slack"] == math.inf \
        or d["envelope_min_slack"] >= -tol
    assert d["grad_step_bound_min_slack"] >= -1e-15


def test_convex_rate_rejects_unreachable_best_value():
    geom, prob, trace = _run_sparse(seed=15)
    env = build_envelope(trace, prob)
    with pytest.raises(ValueError):
        check_convex_rate(trace, env, f_best=trace.final_cost + 0.1)


def test_convex_rate_envelope_constant_majorizes_gaps():
    geom, rng, prob = _spd_problem(seed=16)
    trace = crpg_solve(prob, geom.identity(),
                       ConstantStep(1.0 / prob.lipschitz))
    env = build_envelope(trace, prob)
    f_best = float(np.min(trace.costs))
    report = check_convex_rate(trace, env, f_best=f_best)
    c = report.details["envelope_constant"]
    for k in range(1, trace.iterations + 1):
        gap = trace.costs[k] - f_best
        if gap >= 1e-12:
            assert gap <= c / k + report.details["tolerance"]

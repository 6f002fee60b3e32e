"""Proximal operators: closed forms, grid minimality, the l1 fixed point."""

import math

import numpy as np
import pytest

from geoprox import (HyperbolicGeometry, SpdGeometry, geodesic,
                     l1_shrink_limit, l1_shrink_vector,
                     l1_stationarity_residual, l1_tangent_residual,
                     project_ball, prox_distance, prox_l1_hyperbolic,
                     prox_sq_distance)
from geoprox.proxops import l1_normalize, l1_sigma, l1_subgradient_vector


def _geodesic_grid_min(geom, p, q_bar, objective, count=2001, overshoot=1.2):
    """Smallest objective value over a dense grid on the geodesic through
    p and q_bar (slightly extended past both ends)."""
    best = math.inf
    for u in np.linspace(-(overshoot - 1.0), overshoot, count):
        y = geodesic(geom, p, q_bar, float(u))
        best = min(best, objective(y))
    return best


@pytest.mark.parametrize("make_geom", [lambda: HyperbolicGeometry(2),
                                       lambda: SpdGeometry(2)])
def test_prox_distance_walks_the_right_arclength(make_geom):
    geom = make_geom()
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = geom.random_point(rng, 1.0)
        q_bar = geom.random_point(rng, 1.0)
        d = geom.dist(p, q_bar)
        tau, lam = 0.7, 0.4
        out = prox_distance(geom, q_bar, tau, lam, p)
        if d <= lam * tau:
            assert np.array_equal(out.coords, q_bar.coords)
        else:
            assert abs(geom.dist(p, out) - lam * tau) <= 1e-10 * (1.0 + d)
            assert abs(geom.dist(out, q_bar) - (d - lam * tau)) \
                <= 1e-10 * (1.0 + d)


def test_prox_distance_caps_at_the_target():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(2)
    p = geom.random_point(rng, 0.3)
    q_bar = geom.random_point(rng, 0.3)
    out = prox_distance(geom, q_bar, 5.0, 5.0, p)  # lam*tau far exceeds d
    assert np.array_equal(out.coords, q_bar.coords)


def test_prox_distance_minimizes_on_a_grid():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(3)
    for _ in range(5):
        p = geom.random_point(rng, 1.0)
        q_bar = geom.random_point(rng, 1.0)
        tau, lam = 0.6, 0.9

        def F(y):
            return tau * geom.dist(y, q_bar) \
                + geom.dist(y, p) ** 2 / (2.0 * lam)

        out = prox_distance(geom, q_bar, tau, lam, p)
        grid = _geodesic_grid_min(geom, p, q_bar, F)
        assert F(out) <= grid + 1e-10


def test_prox_distance_validates_inputs():
    geom = HyperbolicGeometry(2)
    p = geom.apex()
    with pytest.raises(ValueError):
        prox_distance(geom, p, 0.0, 1.0, p)
    with pytest.raises(ValueError):
        prox_distance(geom, p, 1.0, -1.0, p)


def test_prox_sq_distance_is_the_exact_geodesic_fraction():
    geom = SpdGeometry(3)
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = geom.random_point(rng, 1.0)
        q = geom.random_point(rng, 1.0)
        w, lam = 0.8, 1.3
        t = lam * w / (1.0 + lam * w)
        out = prox_sq_distance(geom, q, w, lam, p)
        expect = geodesic(geom, p, q, t)
        assert np.abs(out.coords - expect.coords).max() <= 1e-12
        d = geom.dist(p, q)
        assert abs(geom.dist(p, out) - t * d) <= 1e-9 * (1.0 + d)


def test_prox_sq_distance_minimizes_on_a_grid():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(5)
    p = geom.random_point(rng, 1.0)
    q = geom.random_point(rng, 1.0)
    w, lam = 0.5, 0.7

    def F(y):
        return 0.5 * w * geom.dist(y, q) ** 2 \
            + geom.dist(y, p) ** 2 / (2.0 * lam)

    out = prox_sq_distance(geom, q, w, lam, p)
    grid = _geodesic_grid_min(geom, p, q, F)
    assert F(out) <= grid + 1e-10


def test_prox_sq_distance_validates_inputs():
    geom = HyperbolicGeometry(2)
    p = geom.apex()
    with pytest.raises(ValueError):
        prox_sq_distance(geom, p, -0.1, 1.0, p)
    with pytest.raises(ValueError):
        prox_sq_distance(geom, p, 1.0, 0.0, p)


def test_project_ball_keeps_inside_points_and_clips_outside():
    geom = HyperbolicGeometry(3)
    rng = np.random.default_rng(6)
    center = geom.random_point(rng, 0.5)
    r = 0.8
    for _ in range(30):
        p = geom.random_point(rng, 1.5)
        out = project_ball(geom, center, r, p)
        d = geom.dist(center, p)
        if d <= r:
            assert np.array_equal(out.coords, p.coords)
        else:
            assert abs(geom.dist(center, out) - r) <= 1e-10
            # projection lands on the segment from center to p
            assert abs(geom.dist(p, out) - (d - r)) <= 1e-9
        again = project_ball(geom, center, r, out)
        assert np.abs(again.coords - out.coords).max() <= 1e-10


def test_project_ball_validates_radius():
    geom = HyperbolicGeometry(2)
    with pytest.raises(ValueError):
        project_ball(geom, geom.apex(), 0.0, geom.apex())


# -- l1 prox on the hyperboloid ----------------------------------------------


def test_shrink_vector_soft_thresholds_space_and_grows_time():
    geom = HyperbolicGeometry(3)
    x = geom.point([0.5, -0.03, 0.0, math.sqrt(1.0 + 0.25 + 0.0009)])
    out = l1_shrink_vector(x, 0.1)
    assert np.allclose(out[:-1], [0.4, 0.0, 0.0], atol=1e-15)
    assert out[-1] == x.coords[-1] + 0.1
    with pytest.raises(ValueError):
        l1_shrink_vector(x, -0.2)


def test_normalize_returns_to_the_sheet_and_validates():
    geom = HyperbolicGeometry(2)
    y = l1_normalize(geom, np.array([0.3, -0.4, 2.0]))
    from helpers import hyp_membership_defect
    assert hyp_membership_defect(y.coords) <= 1e-12
    with pytest.raises(ValueError):
        l1_normalize(geom, np.array([2.0, 0.0, 1.0]))   # spacelike
    with pytest.raises(ValueError):
        l1_normalize(geom, np.array([0.0, 0.0, -1.0]))  # lower sheet


def test_sigma_matches_sinh_ratio_and_its_limit():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(7)
    x = geom.random_point(rng, 1.0)
    y = geom.random_point(rng, 1.0)
    mu = 0.37
    d = geom.dist(x, y)
    expect = mu * math.sinh(d) / d
    assert abs(l1_sigma(x, y, mu) - expect) <= 1e-12 * (1.0 + expect)
    assert l1_sigma(x, x, mu) == mu


def test_shrink_limit_is_sigma_at_the_apex():
    geom = HyperbolicGeometry(4)
    rng = np.random.default_rng(8)
    for _ in range(20):
        x = geom.random_point(rng, 1.2)
        mu = float(rng.uniform(0.05, 1.0))
        lim = l1_shrink_limit(x, mu)
        sig = l1_sigma(x, geom.apex(), mu)
        assert abs(lim - sig) <= 1e-12 * (1.0 + lim)


def test_l1_prox_converges_fast_with_bracketed_shrink_amount():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(9)
    for _ in range(50):
        x = geom.random_point(rng, 1.0)
        mu = float(rng.uniform(0.05, 1.0))
        res = prox_l1_hyperbolic(x, mu, tol=1e-7, max_iter=20)
        assert res.converged
        assert res.iterations <= 20
        assert res.t_star >= mu - 1e-12
        assert res.t_star <= l1_shrink_limit(x, mu) + 1e-7


def test_l1_prox_certificates_are_small():
    # the collinearity defect is structural (float roundoff); the tangent
    # defect tracks the fixed-point tolerance
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(10)
    for _ in range(50):
        x = geom.random_point(rng, 1.0)
        mu = float(rng.uniform(0.05, 1.0))
        res = prox_l1_hyperbolic(x, mu, tol=1e-7, max_iter=20)
        assert l1_stationarity_residual(x, res) <= 1e-12
        assert l1_tangent_residual(x, res, mu) <= 1e-6
        tight = prox_l1_hyperbolic(x, mu, tol=1e-10, max_iter=60)
        assert l1_tangent_residual(x, tight, mu) <= 1e-8


def test_l1_prox_minimizes_on_a_tangent_grid():
    from geoprox import kernels
    from helpers import hyp_tangent_basis

    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(11)
    for _ in range(3):
        x = geom.random_point(rng, 1.0)
        mu = float(rng.uniform(0.1, 0.8))
        res = prox_l1_hyperbolic(x, mu, tol=1e-9, max_iter=40)

        def F(ycoords):
            s = max(-(ycoords[:-1] @ x.coords[:-1]
                      - ycoords[-1] * x.coords[-1]), 1.0)
            return mu * float(np.abs(ycoords).sum()) \
                + 0.5 * math.acosh(s) ** 2

        e1, e2 = hyp_tangent_basis(geom, x)
        radius = 1.5 * geom.dist(x, geom.apex()) + 0.5
        grid = np.linspace(-radius, radius, 201)
        best = math.inf
        for a in grid:
            tangents = np.ascontiguousarray(
                a * e1[None, :] + grid[:, None] * e2[None, :])
            ys = kernels.exp_many(x.coords, tangents)
            vals = mu * np.abs(ys).sum(axis=1) \
                + 0.5 * kernels.dist_many(ys, x.coords) ** 2
            best = min(best, float(vals.min()))
        assert F(res.point.coords) <= best + 1e-6


def test_l1_prox_with_zero_weight_is_identity():
    geom = HyperbolicGeometry(3)
    rng = np.random.default_rng(12)
    x = geom.random_point(rng, 1.0)
    res = prox_l1_hyperbolic(x, 0.0)
    assert np.array_equal(res.point.coords, x.coords)
    assert res.t_star == 0.0
    assert res.converged


def test_l1_prox_fixes_the_apex():
    geom = HyperbolicGeometry(2)
    res = prox_l1_hyperbolic(geom.apex(), 0.5)
    assert np.abs(res.point.coords - geom.apex().coords).max() <= 1e-15
    assert res.converged


def test_l1_prox_is_nonexpansive():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(13)
    for _ in range(30):
        x1 = geom.random_point(rng, 1.0)
        x2 = geom.random_point(rng, 1.0)
        mu = float(rng.uniform(0.05, 1.0))
        y1 = prox_l1_hyperbolic(x1, mu, tol=1e-10, max_iter=60).point
        y2 = prox_l1_hyperbolic(x2, mu, tol=1e-10, max_iter=60).point
        assert geom.dist(y1, y2) <= geom.dist(x1, x2) + 1e-9


def test_l1_prox_sparsity_grows_with_weight():
    geom = HyperbolicGeometry(5)
    rng = np.random.default_rng(14)
    x = geom.random_point(rng, 1.0)
    counts = []
    for mu in (0.05, 0.2, 0.5, 1.0):
        res = prox_l1_hyperbolic(x, mu, tol=1e-10, max_iter=60)
        counts.append(int((res.point.coords[:-1] == 0.0).sum()))
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def test_l1_prox_history_records_the_iteration():
    geom = HyperbolicGeometry(2)
    rng = np.random.default_rng(15)
    x = geom.random_point(rng, 1.0)
    res = prox_l1_hyperbolic(x, 0.3, tol=1e-9, max_iter=40,
                             record_history=True)
    assert res.t_history is not None
    assert res.t_history[0] == 0.3          # the iteration starts at mu_eff
    assert res.t_history[-1] == res.t_star
    assert len(res.t_history) == res.iterations + 1


def test_l1_prox_validates_inputs():
    geom = HyperbolicGeometry(2)
    x = geom.apex()
    with pytest.raises(ValueError):
        prox_l1_hyperbolic(x, -0.1)
    with pytest.raises(ValueError):
        prox_l1_hyperbolic(x, 0.1, tol=0.0)
    with pytest.raises(ValueError):
        prox_l1_hyperbolic(x, 0.1, max_iter=0)
    spd = SpdGeometry(2)
    with pytest.raises(ValueError):
        prox_l1_hyperbolic(spd.identity(), 0.1)


def test_l1_subgradient_certificate_shape():
    geom = HyperbolicGeometry(3)
    rng = np.random.default_rng(16)
    x = geom.random_point(rng, 1.0)
    res = prox_l1_hyperbolic(x, 0.6, tol=1e-9, max_iter=40)
    v = l1_subgradient_vector(x, res)
    y = res.point.coords
    nz = y != 0.0
    assert np.array_equal(v[nz], np.sign(y[nz]))
    zero = ~nz[:-1]
    if zero.any():
        # on zeroed coordinates the certificate lies in [-1, 1]
        assert np.abs(v[:-1][zero]).max() <= 1.0 + 1e-9

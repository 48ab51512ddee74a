"""Bootstrap draws, the ESP hypercube quantile, and eigenvalue rectangles."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modesig import (
    BootstrapDraws,
    DensityModel,
    EspConfidenceSet,
    bootstrap_hessian,
    bootstrap_hessian_batch,
    eigen_rectangles,
    esp_forward,
    esp_inverse,
    esp_quantile,
    find_modes,
)
from modesig import test_significance as significance_verdict


def draws_with_distances(dist):
    """Craft draws whose ESP rows sit at given sup-distances from s_hat."""
    dist = np.asarray(dist, dtype=np.float64)
    B = dist.shape[0]
    s_star = np.zeros((B, 2))
    s_star[:, 0] = dist
    lam = np.stack([dist, -np.ones(B)], axis=1)
    return BootstrapDraws(
        lambda_star=lam,
        s_star=s_star,
        lambda_hat=np.array([0.0, -1.0]),
        s_hat=np.zeros(2),
    )


class TestDraws:
    def test_singleton_resample_equals_point_estimate(self):
        d = bootstrap_hessian(np.array([[0.4, -1.0]]), 1.0, np.array([0.0, 0.0]), B=1, seed=3)
        assert np.array_equal(d.lambda_star[0], d.lambda_hat)
        assert np.array_equal(d.s_star[0], d.s_hat)

    def test_same_seed_same_draws(self):
        rng = np.random.default_rng(0)
        Y = rng.normal(size=(60, 2))
        a = bootstrap_hessian(Y, 0.8, np.zeros(2), B=40, seed=9)
        b = bootstrap_hessian(Y, 0.8, np.zeros(2), B=40, seed=9)
        assert np.array_equal(a.lambda_star, b.lambda_star)
        assert np.array_equal(a.s_star, b.s_star)

    def test_batch_equals_individual_calls(self):
        rng = np.random.default_rng(1)
        Y = rng.normal(size=(50, 2))
        pts = [np.array([0.0, 0.0]), np.array([0.5, -0.5])]
        batch = bootstrap_hessian_batch(Y, 1.0, pts, B=25, seed=7)
        for p, got in zip(pts, batch):
            solo = bootstrap_hessian(Y, 1.0, p, B=25, seed=7)
            assert np.array_equal(got.lambda_star, solo.lambda_star)
            assert np.array_equal(got.s_star, solo.s_star)
            assert np.array_equal(got.lambda_hat, solo.lambda_hat)

    def test_rows_sorted_and_esp_consistent(self):
        rng = np.random.default_rng(2)
        Y = rng.normal(size=(80, 3))
        d = bootstrap_hessian(Y, 0.9, np.zeros(3), B=30, seed=5)
        assert np.all(np.diff(d.lambda_star, axis=1) <= 1e-12)
        for b in range(d.B):
            assert np.array_equal(d.s_star[b], esp_forward(d.lambda_star[b]))

    def test_point_estimate_matches_model_hessian(self):
        from modesig import sym_eigenvalues
        rng = np.random.default_rng(4)
        Y = rng.normal(size=(70, 2))
        at = np.array([0.1, 0.2])
        d = bootstrap_hessian(Y, 1.1, at, B=2, seed=1)
        lam = sym_eigenvalues(DensityModel(Y, 1.1).hessian(at).hessian)
        assert_allclose(d.lambda_hat, lam, rtol=1e-12, atol=1e-15)

    def test_bootstrap_sd_tracks_sampling_sd(self):
        # d=1: bootstrap spread of the Hessian at the sample mode vs. the
        # Monte Carlo spread of the estimate across fresh datasets
        rng = np.random.default_rng(31)
        Y = rng.normal(size=500)
        model = DensityModel(Y, 1.0)
        mode = find_modes(model)[0][0].location
        d = bootstrap_hessian(Y, 1.0, mode, B=1000, seed=2)
        boot_sd = np.std(d.lambda_star[:, 0], ddof=1)

        fresh = np.empty(200)
        for r in range(200):
            data = rng.normal(size=500)
            m = DensityModel(data, 1.0)
            own_mode = find_modes(m)[0][0].location
            fresh[r] = m.hessian(own_mode).hessian[0, 0]
        mc_sd = np.std(fresh, ddof=1)
        assert 0.5 <= boot_sd / mc_sd <= 2.0, f"ratio {boot_sd / mc_sd:.2f}"

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            bootstrap_hessian(np.zeros((3, 1)), 1.0, np.zeros(1), B=0, seed=0)
        with pytest.raises(ValueError):
            bootstrap_hessian(np.zeros((3, 1)), -1.0, np.zeros(1), B=5, seed=0)
        with pytest.raises(ValueError):
            bootstrap_hessian(np.zeros((3, 1)), 1.0, np.zeros(2), B=5, seed=0)


class TestQuantile:
    def test_all_draws_at_center_give_zero(self):
        q = esp_quantile(draws_with_distances(np.zeros(50)), 0.1)
        assert q.q == 0.0

    def test_95th_order_statistic(self):
        dist = np.arange(1.0, 101.0)
        np.random.default_rng(0).shuffle(dist)
        cs = esp_quantile(draws_with_distances(dist), 0.05)
        assert cs.q == 95.0
        assert cs.level == 0.95

    def test_endpoints(self):
        dist = np.arange(1.0, 101.0)
        assert esp_quantile(draws_with_distances(dist), 1.0 - 1e-9).q == 1.0
        assert esp_quantile(draws_with_distances(dist), 1e-9).q == 100.0

    def test_monotone_in_alpha(self):
        rng = np.random.default_rng(8)
        dist = rng.exponential(size=37)
        qs = [esp_quantile(draws_with_distances(dist), a).q for a in [0.01, 0.05, 0.1, 0.3, 0.8]]
        assert all(x >= y for x, y in zip(qs, qs[1:]))

    def test_defining_fraction_bound(self):
        # q is smallest with fraction strictly above q at most alpha
        rng = np.random.default_rng(9)
        dist = rng.normal(size=83) ** 2
        for a in [0.02, 0.1, 0.25]:
            q = esp_quantile(draws_with_distances(dist), a).q
            assert np.mean(dist > q) <= a
            smaller = dist[dist < q]
            if smaller.size:
                assert np.mean(dist > smaller.max()) > a

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            esp_quantile(draws_with_distances(np.ones(5)), 0.0)
        with pytest.raises(ValueError):
            esp_quantile(draws_with_distances(np.ones(5)), 1.0)


class TestRectangles:
    def test_interval_is_minmax_of_negated_top_eigenvalue(self):
        rng = np.random.default_rng(10)
        lam1 = rng.uniform(-0.5, -0.2, size=40)
        draws = BootstrapDraws(
            lambda_star=np.stack([lam1, lam1 - 1.0], axis=1),
            s_star=np.zeros((40, 2)),  # all rows inside any hypercube
            lambda_hat=np.array([-0.3, -1.3]),
            s_hat=np.zeros(2),
        )
        cs = EspConfidenceSet(center=np.zeros(2), q=0.0, level=0.9)
        p = eigen_rectangles(draws, cs)
        assert_allclose(p.c_interval, [-lam1.max(), -lam1.min()], rtol=1e-15)
        assert_allclose(p.c_interval, [0.2, 0.5], atol=0.05)
        assert p.significant

    def test_single_draw_degenerate_interval(self):
        rng = np.random.default_rng(11)
        Y = rng.normal(size=(30, 2))
        d = bootstrap_hessian(Y, 1.0, np.zeros(2), B=1, seed=0)
        p = eigen_rectangles(d, esp_quantile(d, 0.5))
        assert p.c_interval[0] == p.c_interval[1] == -d.lambda_star[0, 0]

    def test_c_equals_first_rectangle_and_shared_retained_set(self):
        rng = np.random.default_rng(12)
        Y = rng.normal(size=(90, 3))
        d = bootstrap_hessian(Y, 0.9, np.zeros(3), B=200, seed=4)
        cs = esp_quantile(d, 0.08)
        p = eigen_rectangles(d, cs)
        assert np.array_equal(p.c_interval, p.rectangles[0])
        J = np.max(np.abs(d.s_star - d.s_hat[None, :]), axis=1) <= cs.q
        gamma = -d.lambda_star[J]
        assert_allclose(p.rectangles[:, 0], gamma.min(axis=0), rtol=0, atol=0)
        assert_allclose(p.rectangles[:, 1], gamma.max(axis=0), rtol=0, atol=0)

    def test_retained_rows_roundtrip_and_lie_in_interval(self):
        rng = np.random.default_rng(13)
        Y = rng.normal(size=(70, 2))
        d = bootstrap_hessian(Y, 1.0, np.array([0.2, -0.1]), B=100, seed=6)
        cs = esp_quantile(d, 0.1)
        p = eigen_rectangles(d, cs)
        J = np.flatnonzero(np.max(np.abs(d.s_star - d.s_hat[None, :]), axis=1) <= cs.q)
        assert J.size >= 1
        for b in J:
            back = esp_inverse(d.s_star[b])
            assert_allclose(back, d.lambda_star[b], atol=1e-8 * (1 + np.max(np.abs(back))))
            assert p.c_interval[0] - 1e-12 <= -d.lambda_star[b, 0] <= p.c_interval[1] + 1e-12


class TestSignificance:
    def test_strictly_positive_interval(self):
        assert significance_verdict([0.2, 0.5]) is True

    def test_interval_straddling_zero(self):
        assert significance_verdict([-0.1, 0.4]) is False

    def test_zero_boundary_is_not_significant(self):
        assert significance_verdict([0.0, 0.3]) is False


def test_rectangle_coverage_at_true_smoothed_mode():
    # data ~ N(0, diag(1, 4)) smoothed with h=1 is N(0, diag(2, 5)); at its
    # mode (the origin) the Hessian is -p(0) diag(1/2, 1/5), so the true
    # curvatures are p(0)/5 < p(0)/2 with p(0) = 1/(2 pi sqrt(10)).  The
    # rectangles should cover both in at least 85 of 100 repetitions at the
    # 90% level.  (Equal eigenvalues converge much more slowly and are
    # exercised qualitatively elsewhere.)
    p0 = 1.0 / (2.0 * np.pi * np.sqrt(10.0))
    gamma_true = np.array([p0 / 5.0, p0 / 2.0])  # ascending, matching rows
    n, B = 400, 500
    hits = 0
    for seed in range(100):
        data = np.random.default_rng(seed).normal(size=(n, 2)) * np.array([1.0, 2.0])
        d = bootstrap_hessian(data, 1.0, np.zeros(2), B=B, seed=seed + 10_000)
        p = eigen_rectangles(d, esp_quantile(d, 0.10))
        inside = all(
            p.rectangles[s, 0] <= gamma_true[s] <= p.rectangles[s, 1] for s in range(2)
        )
        hits += inside
    assert hits >= 85, f"covered in only {hits}/100 repetitions"

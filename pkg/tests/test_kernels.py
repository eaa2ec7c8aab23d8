"""Tests for the overdamped and underdamped transition kernels."""

import math

import numpy as np
import pytest

from rcad_lmc.core.exceptions import IndefiniteCovarianceError
from rcad_lmc.core.models import OverdampedState, UnderdampedState
from rcad_lmc.kernels import (
    UnderdampedTransition,
    cholesky_2x2,
    overdamped_state_step,
    overdamped_step,
    transition_covariance,
    transition_drift,
    underdamped_moments,
    underdamped_step,
)
from rcad_lmc.kernels.underdamped import SERIES_THRESHOLD


class TestOverdampedStep:
    def test_without_noise(self):
        x = np.array([1.0, -2.0])
        out = overdamped_step(x, flux=x, h=0.1, noise=np.zeros(2))
        np.testing.assert_allclose(out, [0.9, -1.8])

    def test_noise_scale(self):
        out = overdamped_step(np.zeros(3), np.zeros(3), h=0.5, noise=np.ones(3))
        np.testing.assert_allclose(out, np.ones(3))

    def test_batched(self):
        x = np.ones((4, 2))
        out = overdamped_step(x, np.zeros_like(x), h=0.02, noise=np.full((4, 2), -1.0))
        np.testing.assert_allclose(out, np.full((4, 2), 0.8))

    def test_state_wrapper(self):
        state = OverdampedState(x=np.array([2.0]))
        state = overdamped_state_step(state, np.array([2.0]), 0.25, np.zeros(1))
        np.testing.assert_allclose(state.x, [1.5])

    @pytest.mark.parametrize("h", [0.0, -0.1])
    def test_rejects_nonpositive_h(self, h):
        with pytest.raises(ValueError):
            overdamped_step(np.zeros(2), np.zeros(2), h, np.zeros(2))


class TestTransitionMoments:
    def test_covariance_at_tenth(self):
        cov_xx, cov_vv, cov_xv = transition_covariance(0.1, 1.0)
        assert cov_xx == pytest.approx(1.1513e-3, rel=1e-3)
        assert cov_vv == pytest.approx(0.329680, rel=1e-5)
        assert cov_xv == pytest.approx(1.64293e-2, rel=1e-5)
        assert cov_xx * cov_vv - cov_xv**2 == pytest.approx(1.0945e-4, rel=1e-3)

    def test_covariance_scales_with_gamma(self):
        base = transition_covariance(0.05, 1.0)
        scaled = transition_covariance(0.05, 3.0)
        np.testing.assert_allclose(scaled, 3.0 * np.asarray(base), rtol=1e-14)

    def test_drift_coefficients(self):
        p, q, e, s = transition_drift(0.1, 1.0)
        assert e == pytest.approx(math.exp(-0.2))
        assert p == pytest.approx((1 - math.exp(-0.2)) / 2)
        assert s == pytest.approx((1 - math.exp(-0.2)) / 2)
        assert q == pytest.approx(0.5 * (0.1 - p))

    def test_means(self):
        state = UnderdampedState(x=np.array([1.0, 0.0]), v=np.array([0.0, 2.0]))
        flux = np.array([1.0, 0.0])
        moments = underdamped_moments(state, flux, 0.1, 1.0)
        p, q, e, s = transition_drift(0.1, 1.0)
        np.testing.assert_allclose(moments.mean_x, [1.0 - q, 2.0 * p])
        np.testing.assert_allclose(moments.mean_v, [-s, 2.0 * e])

    def test_zero_input_zero_mean(self):
        zeros = np.zeros(5)
        moments = underdamped_moments(UnderdampedState(x=zeros, v=zeros), zeros, 0.3, 1.0)
        np.testing.assert_array_equal(moments.mean_x, zeros)
        np.testing.assert_array_equal(moments.mean_v, zeros)

    def test_vanishing_step_limit(self):
        state = UnderdampedState(x=np.array([0.7]), v=np.array([-0.3]))
        moments = underdamped_moments(state, np.array([5.0]), 1e-9, 1.0)
        np.testing.assert_allclose(moments.mean_x, [0.7], atol=1e-8)
        np.testing.assert_allclose(moments.mean_v, [-0.3], atol=1e-8)
        assert moments.cov_xx < 1e-24
        assert moments.cov_vv < 1e-8
        assert abs(moments.cov_xv) < 1e-16

    @pytest.mark.parametrize("gamma", [0.1, 1.0, 10.0])
    def test_positive_semidefinite_on_log_grid(self, gamma):
        for h in np.logspace(-6, 0, 1000):
            cov_xx, cov_vv, cov_xv = transition_covariance(float(h), gamma)
            assert cov_xx >= 0
            assert cov_vv >= 0
            assert cov_xx * cov_vv - cov_xv**2 >= -1e-15
            cholesky_2x2(cov_xx, cov_vv, cov_xv)

    @pytest.mark.parametrize("h", [1e-2, 1e-3, 1e-4])
    def test_small_step_asymptotics(self, h):
        gamma = 2.0
        cov_xx, cov_vv, cov_xv = transition_covariance(h, gamma)
        assert cov_vv / (4 * gamma * h * (1 - 2 * h)) == pytest.approx(1.0, rel=0.05)
        assert cov_xx / (gamma * (4.0 / 3.0 * h**3 - 2 * h**4)) == pytest.approx(1.0, rel=0.05)
        assert cov_xv / (2 * gamma * h**2 * (1 - 2 * h)) == pytest.approx(1.0, rel=0.05)

    def test_series_matches_direct_formula_at_threshold(self):
        below = transition_covariance(math.nextafter(SERIES_THRESHOLD, 0.0), 1.0)[0]
        at = transition_covariance(SERIES_THRESHOLD, 1.0)[0]
        assert below == pytest.approx(at, rel=1e-6)

    @pytest.mark.parametrize("h, gamma", [(0.0, 1.0), (0.1, 0.0), (-1.0, 1.0)])
    def test_rejects_bad_arguments(self, h, gamma):
        with pytest.raises(ValueError):
            transition_covariance(h, gamma)


class TestCholesky:
    def test_reconstruction(self):
        cov = transition_covariance(0.1, 1.0)
        a, b, c = cholesky_2x2(*cov)
        lower = np.array([[a, 0.0], [b, c]])
        expected = np.array([[cov[0], cov[2]], [cov[2], cov[1]]])
        np.testing.assert_allclose(lower @ lower.T, expected, rtol=1e-12)

    def test_degenerate_position_variance(self):
        assert cholesky_2x2(0.0, 4.0, 0.0) == (0.0, 0.0, 2.0)

    def test_indefinite(self):
        with pytest.raises(IndefiniteCovarianceError) as exc:
            cholesky_2x2(1.0, 1.0, 2.0)
        assert exc.value.determinant == pytest.approx(-3.0)

    def test_negative_diagonal(self):
        with pytest.raises(IndefiniteCovarianceError):
            cholesky_2x2(-1.0, 1.0, 0.0)

    def test_rounding_noise_clamped(self):
        a, b, c = cholesky_2x2(1e-8, 1e-8, 1e-8 * (1 + 1e-9))
        assert a == pytest.approx(1e-4)
        assert c == 0.0


class TestUnderdampedStep:
    def test_zero_noise_returns_mean(self):
        state = UnderdampedState(x=np.array([1.0, -1.0]), v=np.array([0.5, 0.0]))
        flux = np.array([0.3, -0.2])
        moments = underdamped_moments(state, flux, 0.05, 1.0)
        nxt = underdamped_step(state, flux, 0.05, 1.0, np.zeros(4))
        np.testing.assert_allclose(nxt.x, moments.mean_x)
        np.testing.assert_allclose(nxt.v, moments.mean_v)

    def test_empirical_covariance(self):
        rng = np.random.default_rng(123)
        n = 1_000_000
        transition = UnderdampedTransition(0.1, 1.0)
        zeros = np.zeros((n, 1))
        x, v = transition.apply(zeros, zeros, zeros, rng.standard_normal((n, 2)))
        cov_xx, cov_vv, cov_xv = transition.covariance
        # standard errors of the product moments of a centered bivariate Gaussian
        checks = [
            (x * x, cov_xx, math.sqrt(2.0) * cov_xx),
            (v * v, cov_vv, math.sqrt(2.0) * cov_vv),
            (x * v, cov_xv, math.sqrt(cov_xx * cov_vv + cov_xv**2)),
        ]
        for products, exact, spread in checks:
            assert abs(np.mean(products) - exact) <= 3.0 * spread / math.sqrt(n)

    def test_noise_width_mismatch(self):
        transition = UnderdampedTransition(0.1, 1.0)
        zeros = np.zeros(3)
        with pytest.raises(ValueError):
            transition.apply(zeros, zeros, zeros, np.zeros(3))

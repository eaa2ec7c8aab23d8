"""Tests for finite differences and the RCD and RCAD estimators."""

import numpy as np
import pytest

from rcad_lmc.core.models import GradMemory
from rcad_lmc.core.targets import CustomTarget, GaussianTarget, MixtureTarget
from rcad_lmc.core.types import EstimatorKind, GradientMode, SamplerKind
from rcad_lmc.gradients import (
    EstimatorFactory,
    EvalCounter,
    RCADEstimator,
    central_difference,
    full_gradient_fd,
    partial_derivative,
    rcad_error_variance_closed_form,
    rcad_error_variance_enumerated,
    rcad_flux,
    rcad_init,
    rcd_estimate,
)

EXACT = GradientMode.EXACT


def half_square(d: int) -> GaussianTarget:
    return GaussianTarget(mean=0.0, dim=d)


class TestCentralDifference:
    def test_exact_on_quadratic(self):
        value = central_difference(half_square(2), np.array([3.0, 0.0]), 0, 0.1)
        assert value == pytest.approx(3.0, abs=1e-12)

    def test_zero_at_origin(self):
        for i in range(3):
            assert central_difference(half_square(3), np.zeros(3), i, 0.37) == 0.0

    def test_quartic_bias(self):
        target = CustomTarget(dim=1, potential=lambda x: x[..., 0] ** 4, mu=0.0, lip_grad=1.0)
        value = central_difference(target, np.array([1.0]), 0, 0.01)
        assert value == pytest.approx(4.0004, abs=1e-6)

    def test_rejects_nonpositive_eta(self):
        with pytest.raises(ValueError):
            central_difference(half_square(2), np.zeros(2), 0, 0.0)

    def test_counts_one_eval_per_batch(self):
        counter = EvalCounter()
        central_difference(half_square(3), np.ones((50, 3)), np.zeros(50, dtype=int), 0.1, counter)
        assert counter.count == 1

    def test_exact_mode_costs_the_same(self):
        counter = EvalCounter()
        value = partial_derivative(half_square(2), np.array([1.5, 0.0]), 0, 0.1, EXACT, counter)
        assert value == 1.5
        assert counter.count == 1


class TestFullGradient:
    def test_quadratic(self):
        counter = EvalCounter()
        grad = full_gradient_fd(half_square(3), np.array([1.0, 2.0, 3.0]), 1e-3, counter)
        np.testing.assert_allclose(grad, [1.0, 2.0, 3.0], atol=1e-9)
        assert counter.count == 3

    def test_mixture_origin(self):
        grad = full_gradient_fd(MixtureTarget(dim=4), np.zeros(4), 0.05)
        np.testing.assert_allclose(grad, np.zeros(4), atol=1e-12)

    def test_exact_mode(self):
        counter = EvalCounter()
        grad = full_gradient_fd(half_square(3), np.array([1.0, 2.0, 3.0]), 1e-3, counter, EXACT)
        np.testing.assert_array_equal(grad, [1.0, 2.0, 3.0])
        assert counter.count == 3


class TestRCD:
    def test_single_coordinate(self):
        counter = EvalCounter()
        estimate = rcd_estimate(half_square(2), np.array([1.0, 2.0]), 1e-3, 1, counter)
        np.testing.assert_allclose(estimate, [0.0, 4.0], atol=1e-9)
        assert counter.count == 1

    def test_unbiased_over_coordinates(self):
        x = np.array([1.0, 2.0])
        mean = np.mean([rcd_estimate(half_square(2), x, 1e-3, r, mode=EXACT) for r in range(2)], 0)
        np.testing.assert_allclose(mean, [1.0, 2.0])

    def test_one_dimension_matches_full_gradient(self):
        x = np.array([0.7])
        np.testing.assert_allclose(
            rcd_estimate(half_square(1), x, 1e-3, 0), full_gradient_fd(half_square(1), x, 1e-3)
        )

    def test_batched_coordinates(self):
        x = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        estimate = rcd_estimate(half_square(3), x, 0.1, np.array([2, 0]), mode=EXACT)
        np.testing.assert_allclose(estimate, [[0.0, 0.0, 9.0], [12.0, 0.0, 0.0]])


class TestRCAD:
    def test_init(self):
        mem = rcad_init(half_square(2), np.array([1.0, 1.0]), 1e-3)
        np.testing.assert_allclose(mem.g, [1.0, 1.0], atol=1e-9)
        assert mem.evals == 2

    def test_init_mixture_origin(self):
        mem = rcad_init(MixtureTarget(dim=5), np.zeros(5), 1e-2)
        np.testing.assert_allclose(mem.g, np.zeros(5), atol=1e-12)
        assert mem.evals == 5

    def test_flux_refreshes_one_coordinate(self):
        mem = GradMemory(g=np.ones(3), evals=3)
        result = rcad_flux(half_square(3), mem, np.array([5.0, 1.0, 1.0]), 1e-3, 0, EXACT)
        np.testing.assert_allclose(result.memory.g, [5.0, 1.0, 1.0])
        np.testing.assert_allclose(result.flux, [13.0, 1.0, 1.0])
        assert result.memory.evals == 4
        assert result.coordinate == 0
        np.testing.assert_array_equal(mem.g, np.ones(3))

    def test_flux_equals_memory_when_fresh(self):
        x = np.array([2.0, -1.0, 0.5])
        mem = GradMemory(g=x.copy(), evals=3)
        result = rcad_flux(half_square(3), mem, x, 1e-3, 1, EXACT)
        np.testing.assert_allclose(result.flux, mem.g)

    def test_batched_flux(self):
        mem = GradMemory(g=np.zeros((2, 2)), evals=2)
        x = np.array([[1.0, 2.0], [3.0, 4.0]])
        result = rcad_flux(half_square(2), mem, x, 1e-3, np.array([1, 0]), EXACT)
        np.testing.assert_allclose(result.flux, [[0.0, 4.0], [6.0, 0.0]])
        np.testing.assert_allclose(result.memory.g, [[0.0, 2.0], [3.0, 0.0]])

    def test_variance_example(self):
        target = half_square(2)
        x = np.array([1.0, 2.0])
        mem = GradMemory(g=np.zeros(2), evals=2)
        assert rcad_error_variance_enumerated(target, mem, x) == pytest.approx(5.0)
        assert rcad_error_variance_closed_form(target, mem, x) == pytest.approx(5.0)

    def test_variance_vanishes_with_exact_memory(self):
        target = half_square(3)
        x = np.array([1.0, -2.0, 0.5])
        mem = GradMemory(g=x.copy(), evals=3)
        assert rcad_error_variance_enumerated(target, mem, x) == 0.0

    def test_variance_vanishes_in_one_dimension(self):
        mem = GradMemory(g=np.array([10.0]), evals=1)
        assert rcad_error_variance_enumerated(half_square(1), mem, np.array([-3.0])) == 0.0

    def test_enumeration_needs_exact_partials(self):
        target = CustomTarget(dim=2, potential=lambda x: x[..., 0], mu=0.0, lip_grad=1.0)
        with pytest.raises(ValueError):
            rcad_error_variance_enumerated(target, GradMemory(g=np.zeros(2), evals=2), np.zeros(2))

    def test_unbiasedness_and_variance_identity_randomized(self, rng, random_quadratic):
        for _ in range(200):
            d = int(rng.integers(1, 9))
            target = random_quadratic(d)
            x = rng.standard_normal(d)
            mem = GradMemory(g=rng.standard_normal(d), evals=d)
            grad = target.exact_gradient(x)

            fluxes = [rcad_flux(target, mem, x, 1e-3, r, EXACT).flux for r in range(d)]
            np.testing.assert_allclose(np.mean(fluxes, axis=0), grad, rtol=0, atol=1e-12)

            enumerated = rcad_error_variance_enumerated(target, mem, x)
            closed = rcad_error_variance_closed_form(target, mem, x)
            assert enumerated == pytest.approx(closed, rel=1e-10, abs=1e-12)


class TestEstimators:
    @pytest.mark.parametrize(
        "kind, cost",
        [(EstimatorKind.FULL, 4), (EstimatorKind.RCD, 1), (EstimatorKind.RCAD, 1)],
    )
    def test_step_cost(self, kind, cost):
        estimator = EstimatorFactory.create(kind, half_square(4), 1e-3)
        x = np.ones((3, 4))
        estimator.initialize(x)
        start = estimator.evals
        estimator.flux(x, np.array([0, 1, 2]))
        assert estimator.evals - start == cost

    def test_rcad_init_cost(self):
        estimator = EstimatorFactory.for_sampler(SamplerKind.RCAD_U_LMC, half_square(4), 1e-3)
        assert isinstance(estimator, RCADEstimator)
        estimator.initialize(np.ones((2, 4)))
        assert estimator.evals == 4
        assert estimator.memory.shape == (2, 4)

    def test_rcad_needs_initialize(self):
        estimator = EstimatorFactory.create(EstimatorKind.RCAD, half_square(2), 1e-3)
        with pytest.raises(RuntimeError):
            estimator.flux(np.zeros(2), 0)

    def test_coordinate_required(self):
        estimator = EstimatorFactory.create(EstimatorKind.RCD, half_square(2), 1e-3)
        assert estimator.needs_coordinate
        with pytest.raises(ValueError):
            estimator.flux(np.zeros(2))

    def test_exact_mode_needs_partials(self):
        target = CustomTarget(dim=2, potential=lambda x: x[..., 0], mu=0.0, lip_grad=1.0)
        with pytest.raises(ValueError):
            EstimatorFactory.create(EstimatorKind.FULL, target, 1e-3, EXACT)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            EstimatorFactory.create("sgd", half_square(2), 1e-3)


def quartic_target(d: int) -> CustomTarget:
    # f = sum x^4 / 4 + |x|^2 / 2; on the unit cube the hessian is bounded by 4
    return CustomTarget(
        dim=d,
        potential=lambda x: np.sum(x**4 / 4.0 + x**2 / 2.0, axis=-1),
        mu=1.0,
        lip_grad=4.0,
        exact_partial=lambda x, i: x[..., i] ** 3 + x[..., i],
    )


class TestFiniteDifferenceAccuracy:
    def test_second_order_convergence(self):
        target = quartic_target(2)
        x = np.array([0.7, -0.2])
        exact = 0.7**3 + 0.7
        coarse = central_difference(target, x, 0, 1e-2) - exact
        fine = central_difference(target, x, 0, 5e-3) - exact
        assert coarse / fine == pytest.approx(4.0, rel=1e-3)

    def test_rcad_flux_bias_bound(self, rng):
        eta, lip = 1e-2, 4.0
        for _ in range(50):
            d = int(rng.integers(1, 9))
            target = quartic_target(d)
            x0 = rng.uniform(-1.0, 1.0, d)
            x = rng.uniform(-1.0, 1.0, d)
            r = int(rng.integers(d))
            approx = rcad_flux(target, rcad_init(target, x0, eta), x, eta, r)
            exact = rcad_flux(target, rcad_init(target, x0, eta, EXACT), x, eta, r, EXACT)
            gap = float(np.sum((approx.flux - exact.flux) ** 2))
            assert gap <= 2 * lip**2 * eta**2 * d + 8 * lip**2 * eta**2 * d**2

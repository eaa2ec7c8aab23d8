"""Factory for creating flux estimators."""

from rcad_lmc.core.targets import TargetModel
from rcad_lmc.core.types import EstimatorKind, GradientMode, SamplerKind
from rcad_lmc.gradients.base import BaseFluxEstimator
from rcad_lmc.gradients.estimators import FullGradientEstimator, RCADEstimator, RCDEstimator


class EstimatorFactory:
    """Factory for creating flux estimators by gradient strategy."""

    _registry = {
        EstimatorKind.FULL: FullGradientEstimator,
        EstimatorKind.RCD: RCDEstimator,
        EstimatorKind.RCAD: RCADEstimator,
    }

    @staticmethod
    def create(
        kind: EstimatorKind,
        target: TargetModel,
        eta: float,
        mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
    ) -> BaseFluxEstimator:
        """
        Create an estimator.

        Raises:
            ValueError: If the kind is not registered
        """
        try:
            cls = EstimatorFactory._registry[EstimatorKind(kind)]
        except (KeyError, ValueError) as e:
            raise ValueError(f"unsupported estimator kind: {kind!r}") from e
        return cls(target, eta, mode)

    @staticmethod
    def for_sampler(
        kind: SamplerKind,
        target: TargetModel,
        eta: float,
        mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
    ) -> BaseFluxEstimator:
        return EstimatorFactory.create(kind.estimator, target, eta, mode)

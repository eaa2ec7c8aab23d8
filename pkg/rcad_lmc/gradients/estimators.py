"""Flux estimator implementations: full gradient, RCD and RCAD."""

from typing import Optional

import numpy as np

from rcad_lmc.core.models import GradMemory
from rcad_lmc.core.types import EstimatorKind
from rcad_lmc.gradients.base import BaseFluxEstimator
from rcad_lmc.gradients.finite_difference import EvalCounter, full_gradient_fd
from rcad_lmc.gradients.rcad import rcad_flux, rcad_init
from rcad_lmc.gradients.rcd import rcd_estimate


class FullGradientEstimator(BaseFluxEstimator):
    """d centered differences per step."""

    kind = EstimatorKind.FULL

    def flux(self, x: np.ndarray, r: Optional[np.ndarray] = None) -> np.ndarray:
        counter = EvalCounter(self.evals)
        out = full_gradient_fd(self.target, x, self.eta, counter, self.mode)
        self.evals = counter.count
        return out


class RCDEstimator(BaseFluxEstimator):
    """One centered difference in a uniformly drawn coordinate, scaled by d."""

    kind = EstimatorKind.RCD
    needs_coordinate = True

    def flux(self, x: np.ndarray, r: Optional[np.ndarray] = None) -> np.ndarray:
        if r is None:
            raise ValueError("RCD flux needs a drawn coordinate")
        counter = EvalCounter(self.evals)
        out = rcd_estimate(self.target, x, self.eta, r, counter, self.mode)
        self.evals = counter.count
        return out


class RCADEstimator(BaseFluxEstimator):
    """Memory vector refreshed in one drawn coordinate per step."""

    kind = EstimatorKind.RCAD
    needs_coordinate = True

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._memory: Optional[GradMemory] = None

    def initialize(self, x0: np.ndarray) -> None:
        self._memory = rcad_init(self.target, x0, self.eta, self.mode)
        self.evals = self._memory.evals

    def flux(self, x: np.ndarray, r: Optional[np.ndarray] = None) -> np.ndarray:
        if self._memory is None:
            raise RuntimeError("RCADEstimator.initialize must be called before flux")
        if r is None:
            raise ValueError("RCAD flux needs a drawn coordinate")
        result = rcad_flux(self.target, self._memory, x, self.eta, r, self.mode)
        self._memory = result.memory
        self.evals = result.memory.evals
        return result.flux

    @property
    def memory(self) -> Optional[np.ndarray]:
        return None if self._memory is None else self._memory.g

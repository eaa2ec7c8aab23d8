"""Base sampler interface and the two Langevin dynamics."""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np

from rcad_lmc.core.models import ChainConfig
from rcad_lmc.core.types import Dynamics
from rcad_lmc.gradients.base import BaseFluxEstimator
from rcad_lmc.gradients.factory import EstimatorFactory
from rcad_lmc.kernels.overdamped import overdamped_step
from rcad_lmc.kernels.underdamped import UnderdampedTransition

State = Tuple[np.ndarray, Optional[np.ndarray]]


class BaseSampler(ABC):
    """
    Abstract Langevin sampler driving a block of chains.

    A sampler owns the kernel for one dynamics; the flux comes from the estimator built
    for the configured kind. States are arrays of shape (n, d).
    """

    dynamics: Dynamics

    def __init__(self, config: ChainConfig):
        """
        Initialize the sampler.

        Args:
            config: Chain configuration
        """
        self.config = config
        self.dim = config.target.dim

    @property
    @abstractmethod
    def noise_width(self) -> int:
        """Gaussian draws per chain per step."""
        pass

    @abstractmethod
    def initial_state(self, z: np.ndarray) -> State:
        """Initial (x, v) from one row of standard normals per chain, shape (n, noise_width)."""
        pass

    @abstractmethod
    def propagate(
        self, x: np.ndarray, v: Optional[np.ndarray], flux: np.ndarray, noise: np.ndarray
    ) -> State:
        """
        Apply one transition with the given flux and noise.

        Returns:
            (x, v) with v None for overdamped dynamics
        """
        pass

    def create_estimator(self) -> BaseFluxEstimator:
        return EstimatorFactory.for_sampler(
            self.config.kind,
            self.config.target,
            self.config.params.eta,
            self.config.gradient_mode,
        )

    def _positions(self, z: np.ndarray) -> np.ndarray:
        init = self.config.initial
        return init.x_mean + init.x_std * z[:, : self.dim]


class OverdampedSampler(BaseSampler):
    """Euler-Maruyama discretization of the overdamped Langevin SDE."""

    dynamics = Dynamics.OVERDAMPED

    @property
    def noise_width(self) -> int:
        return self.dim

    def initial_state(self, z: np.ndarray) -> State:
        return self._positions(z), None

    def propagate(
        self, x: np.ndarray, v: Optional[np.ndarray], flux: np.ndarray, noise: np.ndarray
    ) -> State:
        return overdamped_step(x, flux, self.config.params.h, noise), None


class UnderdampedSampler(BaseSampler):
    """Exact Gaussian transition of the underdamped Langevin SDE with frozen flux."""

    dynamics = Dynamics.UNDERDAMPED

    def __init__(self, config: ChainConfig):
        super().__init__(config)
        self.transition = UnderdampedTransition(config.params.h, config.params.gamma)

    @property
    def noise_width(self) -> int:
        return 2 * self.dim

    def initial_state(self, z: np.ndarray) -> State:
        x = self._positions(z)
        init = self.config.initial
        v = init.v_mean + init.v_std * z[:, self.dim :]
        return x, v

    def propagate(
        self, x: np.ndarray, v: Optional[np.ndarray], flux: np.ndarray, noise: np.ndarray
    ) -> State:
        if v is None:
            raise ValueError("underdamped propagation needs a velocity")
        return self.transition.apply(x, v, flux, noise)


class SamplerFactory:
    """Factory for creating samplers by dynamics."""

    @staticmethod
    def create(config: ChainConfig) -> BaseSampler:
        if config.kind.dynamics == Dynamics.OVERDAMPED:
            return OverdampedSampler(config)
        return UnderdampedSampler(config)

"""Base flux estimator interface."""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from rcad_lmc.core.targets import TargetModel
from rcad_lmc.core.types import EstimatorKind, GradientMode


class BaseFluxEstimator(ABC):
    """
    Abstract source of the flux fed to a Langevin kernel in place of grad f.

    An estimator instance belongs to one chain (or one block of chains) and keeps
    that chain's per-chain evaluation count.
    """

    kind: EstimatorKind
    needs_coordinate: bool = False

    def __init__(
        self,
        target: TargetModel,
        eta: float,
        mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
    ):
        """
        Initialize the estimator.

        Args:
            target: Target model
            eta: Finite-difference spatial step
            mode: Finite difference or exact partials
        """
        if mode == GradientMode.EXACT and not target.has_exact_partial:
            raise ValueError(f"{type(target).__name__} has no exact partials for exact mode")
        self.target = target
        self.eta = eta
        self.mode = mode
        self.evals = 0

    def initialize(self, x0: np.ndarray) -> None:
        """Prepare per-chain state at the initial points. No cost by default."""

    @abstractmethod
    def flux(self, x: np.ndarray, r: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Compute the flux at x.

        Args:
            x: Current points of shape (..., d)
            r: Drawn coordinates, for estimators with ``needs_coordinate``

        Returns:
            Flux shaped like x
        """
        pass

    @property
    def memory(self) -> Optional[np.ndarray]:
        return None

"""Random coordinate descent (RCD) gradient estimator."""

from typing import Optional

import numpy as np

from rcad_lmc.core.targets import Coordinate, TargetModel
from rcad_lmc.core.types import GradientMode
from rcad_lmc.gradients.finite_difference import EvalCounter, partial_derivative


def rcd_estimate(
    target: TargetModel,
    x: np.ndarray,
    eta: float,
    r: Coordinate,
    counter: Optional[EvalCounter] = None,
    mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
) -> np.ndarray:
    """
    d * (centered difference at r) * e_r.

    The coordinate is drawn uniformly by the caller and passed in; averaging over all
    r gives the full finite-difference gradient.

    Args:
        target: Target model
        x: Points of shape (..., d)
        eta: Spatial step
        r: Zero-based coordinate, scalar or one per leading point
        counter: Incremented by 1
        mode: Finite difference or exact partials

    Returns:
        Array shaped like x with one nonzero entry per point
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[-1]
    partial = partial_derivative(target, x, r, eta, mode, counter)
    out = np.zeros_like(x)
    flat = out.reshape(-1, d)
    idx = np.broadcast_to(np.asarray(r), x.shape[:-1]).reshape(-1)
    flat[np.arange(flat.shape[0]), idx] = d * np.reshape(partial, -1)
    return out

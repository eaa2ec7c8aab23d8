"""Overdamped Langevin (Euler-Maruyama) transition."""

import numpy as np

from rcad_lmc.core.models import OverdampedState


def overdamped_step(x: np.ndarray, flux: np.ndarray, h: float, noise: np.ndarray) -> np.ndarray:
    """
    x - h F + sqrt(2h) xi.

    Args:
        x: Current points of shape (..., d)
        flux: Gradient surrogate shaped like x
        h: Time step, > 0
        noise: Standard normal draws shaped like x, supplied by the caller

    Returns:
        Next points
    """
    if h <= 0:
        raise ValueError(f"h must be positive, got {h!r}")
    return x - h * flux + np.sqrt(2.0 * h) * noise


def overdamped_state_step(
    state: OverdampedState, flux: np.ndarray, h: float, noise: np.ndarray
) -> OverdampedState:
    return OverdampedState(x=overdamped_step(state.x, flux, h, noise))

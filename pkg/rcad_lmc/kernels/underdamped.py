"""
Underdamped Langevin transition.

One step draws (x', v') from the exact Gaussian transition of the underdamped SDE with
the gradient frozen at the flux. The per-coordinate 2x2 covariance is the same for every
coordinate and depends only on (h, gamma).
"""

import math
from typing import Tuple

import numpy as np

from rcad_lmc.core.exceptions import IndefiniteCovarianceError
from rcad_lmc.core.models import UnderdampedMoments, UnderdampedState

# below this h, cov_xx comes from its Taylor series
SERIES_THRESHOLD = 1e-3
_SERIES_TERMS = 12
DET_TOLERANCE = 1e-15


def _cov_xx_series(h: float) -> float:
    # sum_{k>=3} [(-2)^k - (-4)^k / 4] h^k / k!
    total = 0.0
    for k in range(3, 3 + _SERIES_TERMS):
        total += ((-2.0) ** k - (-4.0) ** k / 4.0) * h**k / math.factorial(k)
    return total


def transition_covariance(h: float, gamma: float) -> Tuple[float, float, float]:
    """
    (cov_xx, cov_vv, cov_xv) of one underdamped step.

    cov_xx = gamma (h - 3/4 - e^{-4h}/4 + e^{-2h}), cov_vv = gamma (1 - e^{-4h}) and
    cov_xv = gamma/2 (1 - e^{-2h})^2, written with expm1 to keep the small-h digits.
    """
    if h <= 0:
        raise ValueError(f"h must be positive, got {h!r}")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    a = math.expm1(-2.0 * h)
    b = math.expm1(-4.0 * h)
    if h < SERIES_THRESHOLD:
        cov_xx = gamma * _cov_xx_series(h)
    else:
        cov_xx = gamma * (h + a - b / 4.0)
    cov_vv = -gamma * b
    cov_xv = 0.5 * gamma * a * a
    return cov_xx, cov_vv, cov_xv


def transition_drift(h: float, gamma: float) -> Tuple[float, float, float, float]:
    """
    Coefficients of the transition mean.

    mean_x = x + p v - q F and mean_v = e v - s F, returned as (p, q, e, s).
    """
    one_minus = -math.expm1(-2.0 * h)
    return (
        0.5 * one_minus,
        0.5 * gamma * (h - 0.5 * one_minus),
        math.exp(-2.0 * h),
        0.5 * gamma * one_minus,
    )


def cholesky_2x2(cov_xx: float, cov_vv: float, cov_xv: float) -> Tuple[float, float, float]:
    """
    Lower-triangular L with L L^T = [[cov_xx, cov_xv], [cov_xv, cov_vv]].

    Returns:
        (L_xx, L_vx, L_vv)

    Raises:
        IndefiniteCovarianceError: If the determinant is below -1e-15
    """
    det = cov_xx * cov_vv - cov_xv * cov_xv
    if det < -DET_TOLERANCE or cov_xx < 0 or cov_vv < 0:
        raise IndefiniteCovarianceError(cov_xx, cov_vv, cov_xv)
    a = math.sqrt(cov_xx)
    if a == 0.0:
        return 0.0, 0.0, math.sqrt(cov_vv)
    b = cov_xv / a
    # tiny negative determinants are rounding noise
    c = math.sqrt(max(cov_vv - b * b, 0.0))
    return a, b, c


def underdamped_moments(
    state: UnderdampedState, flux: np.ndarray, h: float, gamma: float
) -> UnderdampedMoments:
    """
    Mean and covariance of the next underdamped state.

    Args:
        state: Current (x, v)
        flux: Gradient surrogate at x
        h: Time step, > 0
        gamma: Coupling, > 0

    Returns:
        UnderdampedMoments with per-coordinate isotropic covariance
    """
    cov_xx, cov_vv, cov_xv = transition_covariance(h, gamma)
    p, q, e, s = transition_drift(h, gamma)
    x = np.asarray(state.x, dtype=np.float64)
    v = np.asarray(state.v, dtype=np.float64)
    flux = np.asarray(flux, dtype=np.float64)
    return UnderdampedMoments(
        mean_x=x + p * v - q * flux,
        mean_v=e * v - s * flux,
        cov_xx=cov_xx,
        cov_vv=cov_vv,
        cov_xv=cov_xv,
    )


class UnderdampedTransition:
    """
    Precomputed drift coefficients and covariance factor for fixed (h, gamma).

    ``apply`` works on arrays of shape (..., d) with noise of shape (..., 2d).
    """

    def __init__(self, h: float, gamma: float):
        self.h = h
        self.gamma = gamma
        self.covariance = transition_covariance(h, gamma)
        self.factor = cholesky_2x2(*self.covariance)
        self.drift = transition_drift(h, gamma)

    def apply(
        self, x: np.ndarray, v: np.ndarray, flux: np.ndarray, noise: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        d = x.shape[-1]
        if noise.shape[-1] != 2 * d:
            raise ValueError(f"noise must have last axis 2d = {2 * d}, got {noise.shape[-1]}")
        p, q, e, s = self.drift
        l_xx, l_vx, l_vv = self.factor
        xi1 = noise[..., :d]
        xi2 = noise[..., d:]
        x_new = x + p * v - q * flux + l_xx * xi1
        v_new = e * v - s * flux + l_vx * xi1 + l_vv * xi2
        return x_new, v_new


def underdamped_step(
    state: UnderdampedState, flux: np.ndarray, h: float, gamma: float, noise: np.ndarray
) -> UnderdampedState:
    """
    Draw the next state as mean + L (xi_i, xi_{d+i}) per coordinate i.

    Args:
        state: Current (x, v) of shape (..., d)
        flux: Gradient surrogate at x
        h: Time step
        gamma: Coupling
        noise: Standard normal draws of shape (..., 2d)

    Raises:
        IndefiniteCovarianceError: If the transition covariance is numerically indefinite
    """
    transition = UnderdampedTransition(h, gamma)
    x, v = transition.apply(
        np.asarray(state.x, dtype=np.float64),
        np.asarray(state.v, dtype=np.float64),
        np.asarray(flux, dtype=np.float64),
        np.asarray(noise, dtype=np.float64),
    )
    return UnderdampedState(x=x, v=v)

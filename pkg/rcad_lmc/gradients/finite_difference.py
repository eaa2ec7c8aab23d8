"""Centered finite differences and evaluation accounting."""

from typing import Optional

import numpy as np

from rcad_lmc.core.targets import Coordinate, TargetModel
from rcad_lmc.core.types import GradientMode


class EvalCounter:
    """
    Per-chain count of partial-derivative evaluations.

    One centered difference (two evaluations of f) is one eval. A call on a batch of
    chains evaluates every chain once, so it adds 1, not the batch size.
    """

    def __init__(self, start: int = 0):
        self.count = start

    def add(self, n: int = 1) -> None:
        self.count += n

    def __repr__(self) -> str:
        return f"EvalCounter({self.count})"


def _rows(x: np.ndarray) -> np.ndarray:
    return np.arange(int(np.prod(x.shape[:-1], dtype=np.int64)))


def central_difference(
    target: TargetModel,
    x: np.ndarray,
    i: Coordinate,
    eta: float,
    counter: Optional[EvalCounter] = None,
) -> np.ndarray:
    """
    (f(x + eta e_i) - f(x - eta e_i)) / (2 eta).

    Args:
        target: Target model
        x: Points of shape (..., d)
        i: Zero-based coordinate, scalar or one per leading point
        eta: Spatial step, > 0
        counter: Incremented by 1

    Returns:
        Centered differences of shape (...); non-finite f values propagate
    """
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta!r}")
    x = np.asarray(x, dtype=np.float64)
    flat = x.reshape(-1, x.shape[-1])
    idx = np.broadcast_to(np.asarray(i), x.shape[:-1]).reshape(-1)
    rows = _rows(x)
    plus = flat.copy()
    minus = flat.copy()
    plus[rows, idx] += eta
    minus[rows, idx] -= eta
    with np.errstate(over="ignore", invalid="ignore"):
        diff = (target.potential(plus) - target.potential(minus)) / (2.0 * eta)
    if counter is not None:
        counter.add(1)
    return diff.reshape(x.shape[:-1])


def partial_derivative(
    target: TargetModel,
    x: np.ndarray,
    i: Coordinate,
    eta: float,
    mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
    counter: Optional[EvalCounter] = None,
) -> np.ndarray:
    """One partial derivative, finite-differenced or exact. Both cost one eval."""
    if mode == GradientMode.EXACT:
        if counter is not None:
            counter.add(1)
        return np.asarray(target.exact_partial(x, i), dtype=np.float64)
    return central_difference(target, x, i, eta, counter)


def full_gradient_fd(
    target: TargetModel,
    x: np.ndarray,
    eta: float,
    counter: Optional[EvalCounter] = None,
    mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
) -> np.ndarray:
    """
    All d centered differences; the counter grows by d.

    In exact mode the analytic gradient is returned with the same cost.
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[-1]
    if mode == GradientMode.EXACT:
        if counter is not None:
            counter.add(d)
        return np.asarray(target.exact_gradient(x), dtype=np.float64)
    grad = np.empty_like(x)
    for i in range(d):
        grad[..., i] = central_difference(target, x, i, eta, counter)
    return grad

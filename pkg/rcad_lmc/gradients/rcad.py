"""Randomized coordinates averaging descent (RCAD): memory vector and flux."""

from typing import Optional

import numpy as np

from rcad_lmc.core.models import FluxResult, GradMemory
from rcad_lmc.core.targets import Coordinate, TargetModel
from rcad_lmc.core.types import GradientMode
from rcad_lmc.gradients.finite_difference import (
    EvalCounter,
    full_gradient_fd,
    partial_derivative,
)


def rcad_init(
    target: TargetModel,
    x0: np.ndarray,
    eta: float,
    mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
) -> GradMemory:
    """
    Build the initial memory g^0 from a full finite-difference gradient.

    Returns:
        GradMemory with ``evals == d``
    """
    counter = EvalCounter()
    g = full_gradient_fd(target, x0, eta, counter, mode)
    return GradMemory(g=g, evals=counter.count)


def rcad_flux(
    target: TargetModel,
    mem: GradMemory,
    x: np.ndarray,
    eta: float,
    r: Coordinate,
    mode: GradientMode = GradientMode.FINITE_DIFFERENCE,
) -> FluxResult:
    """
    Refresh coordinate r of the memory and form F = g + d (g' - g).

    Args:
        target: Target model
        mem: Current memory (not mutated)
        x: Current points of shape (..., d)
        eta: Spatial step
        r: Zero-based coordinate, scalar or one per leading point
        mode: Finite difference or exact partials

    Returns:
        Flux, the refreshed memory (evals + 1) and r
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[-1]
    counter = EvalCounter(mem.evals)
    fresh = np.reshape(partial_derivative(target, x, r, eta, mode, counter), -1)

    g = np.array(mem.g, dtype=np.float64, copy=True)
    flux = g.copy()
    g_flat = g.reshape(-1, d)
    f_flat = flux.reshape(-1, d)
    rows = np.arange(g_flat.shape[0])
    idx = np.broadcast_to(np.asarray(r), x.shape[:-1]).reshape(-1)
    stale = g_flat[rows, idx]
    # F equals g except in coordinate r
    f_flat[rows, idx] = stale + d * (fresh - stale)
    g_flat[rows, idx] = fresh
    return FluxResult(flux=flux, memory=GradMemory(g=g, evals=counter.count), coordinate=r)


def rcad_error_variance_enumerated(
    target: TargetModel, mem: GradMemory, x: np.ndarray
) -> float:
    """
    E_r |grad f(x) - F(r)|^2 by enumerating every coordinate r, with exact partials.

    Test oracle: the result equals (d - 1) |grad f(x) - g|^2.

    Raises:
        ValueError: If the target has no exact partial derivatives
    """
    if not target.has_exact_partial:
        raise ValueError("variance enumeration requires exact partial derivatives")
    x = np.asarray(x, dtype=np.float64)
    grad = np.asarray(target.exact_gradient(x), dtype=np.float64)
    g = np.asarray(mem.g, dtype=np.float64)
    d = x.shape[-1]
    total = 0.0
    for r in range(d):
        flux = g.copy()
        flux[..., r] = g[..., r] + d * (grad[..., r] - g[..., r])
        total += float(np.sum((grad - flux) ** 2))
    return total / d


def rcad_error_variance_closed_form(
    target: TargetModel, mem: GradMemory, x: np.ndarray, grad: Optional[np.ndarray] = None
) -> float:
    """(d - 1) |grad f(x) - g|^2."""
    x = np.asarray(x, dtype=np.float64)
    if grad is None:
        grad = target.exact_gradient(x)
    return float((x.shape[-1] - 1) * np.sum((np.asarray(grad) - mem.g) ** 2))

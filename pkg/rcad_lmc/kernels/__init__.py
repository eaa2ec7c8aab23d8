"""Markov transition kernels and the Gaussian moment oracle."""

from rcad_lmc.kernels.moments import (
    ORACLE_KINDS,
    gaussian_chain_moment_propagation,
    stationary_second_moment,
)
from rcad_lmc.kernels.overdamped import overdamped_state_step, overdamped_step
from rcad_lmc.kernels.underdamped import (
    UnderdampedTransition,
    cholesky_2x2,
    transition_covariance,
    transition_drift,
    underdamped_moments,
    underdamped_step,
)

__all__ = [
    "overdamped_step",
    "overdamped_state_step",
    "underdamped_moments",
    "underdamped_step",
    "UnderdampedTransition",
    "cholesky_2x2",
    "transition_covariance",
    "transition_drift",
    "gaussian_chain_moment_propagation",
    "stationary_second_moment",
    "ORACLE_KINDS",
]

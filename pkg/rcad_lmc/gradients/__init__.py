"""Gradient approximations: finite differences, RCD and RCAD."""

from rcad_lmc.gradients.base import BaseFluxEstimator
from rcad_lmc.gradients.estimators import FullGradientEstimator, RCADEstimator, RCDEstimator
from rcad_lmc.gradients.factory import EstimatorFactory
from rcad_lmc.gradients.finite_difference import (
    EvalCounter,
    central_difference,
    full_gradient_fd,
    partial_derivative,
)
from rcad_lmc.gradients.rcad import (
    rcad_error_variance_closed_form,
    rcad_error_variance_enumerated,
    rcad_flux,
    rcad_init,
)
from rcad_lmc.gradients.rcd import rcd_estimate

__all__ = [
    "BaseFluxEstimator",
    "FullGradientEstimator",
    "RCDEstimator",
    "RCADEstimator",
    "EstimatorFactory",
    "EvalCounter",
    "central_difference",
    "full_gradient_fd",
    "partial_derivative",
    "rcd_estimate",
    "rcad_init",
    "rcad_flux",
    "rcad_error_variance_enumerated",
    "rcad_error_variance_closed_form",
]

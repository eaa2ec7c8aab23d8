"""Error metrics, analytic references and the counterexample check."""

from rcad_lmc.diagnostics.counterexample import counterexample_check, excess_lower_bound
from rcad_lmc.diagnostics.metrics import (
    counterexample_w2_lower_bound,
    first_coordinate_square,
    gaussian_law_w2_trajectory,
    is_plateaued,
    moment_error,
    stationary_variance_overdamped_gaussian,
    steps_to_plateau,
    w2_gaussian,
    w2_lower_bound_from_moment,
)

__all__ = [
    "moment_error",
    "first_coordinate_square",
    "w2_gaussian",
    "stationary_variance_overdamped_gaussian",
    "is_plateaued",
    "steps_to_plateau",
    "gaussian_law_w2_trajectory",
    "w2_lower_bound_from_moment",
    "counterexample_w2_lower_bound",
    "counterexample_check",
    "excess_lower_bound",
]

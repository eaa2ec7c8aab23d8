"""Error metrics and analytic references."""

import math
from typing import Callable, Optional, Sequence, Union

import numpy as np

from rcad_lmc.core.models import InitialDistribution, MomentErrorReport, MomentTrajectory
from rcad_lmc.core.types import EstimatorKind, SamplerKind
from rcad_lmc.kernels.moments import ORACLE_KINDS, gaussian_chain_moment_propagation

TestFunction = Callable[[np.ndarray], np.ndarray]
MeanLike = Union[float, Sequence[float], np.ndarray]


def first_coordinate_square(x: np.ndarray) -> np.ndarray:
    """phi(x) = |x_1|^2, evaluated row-wise."""
    return np.asarray(x)[..., 0] ** 2


def moment_error(
    samples: np.ndarray, reference: float, phi: Optional[TestFunction] = None
) -> MomentErrorReport:
    """
    |mean of phi over samples - reference| with its Monte Carlo standard error.

    Sums use math.fsum, so the report does not depend on sample order.

    Args:
        samples: Final states of shape (N, d), N >= 2
        reference: E_p phi under the target
        phi: Test function applied row-wise; defaults to |x_1|^2

    Returns:
        MomentErrorReport with std_error = sample std (ddof=1) / sqrt(N)
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2:
        raise ValueError(f"samples must have shape (N, d), got {samples.shape}")
    n = samples.shape[0]
    if n < 2:
        raise ValueError(f"moment_error needs at least 2 samples, got {n}")
    values = np.asarray((phi or first_coordinate_square)(samples), dtype=np.float64).ravel()
    estimate = math.fsum(values.tolist()) / n
    sq = ((values - estimate) ** 2).tolist()
    std = math.sqrt(math.fsum(sq) / (n - 1))
    return MomentErrorReport(
        estimate=estimate,
        reference=reference,
        error=abs(estimate - reference),
        std_error=std / math.sqrt(n),
        n=n,
    )


def w2_gaussian(mean1: MeanLike, var1: float, mean2: MeanLike, var2: float, d: int) -> float:
    """
    W2 between N(mean1, var1 I_d) and N(mean2, var2 I_d).

    Scalar means are read as constant vectors.
    """
    if var1 <= 0 or var2 <= 0:
        raise ValueError(f"variances must be positive, got {var1!r} and {var2!r}")
    m1 = np.broadcast_to(np.asarray(mean1, dtype=np.float64), (d,))
    m2 = np.broadcast_to(np.asarray(mean2, dtype=np.float64), (d,))
    shift = float(np.sum((m1 - m2) ** 2))
    spread = d * (math.sqrt(var1) - math.sqrt(var2)) ** 2
    return math.sqrt(shift + spread)


def stationary_variance_overdamped_gaussian(h: float) -> float:
    """Stationary per-coordinate variance 1 / (1 - h/2) of exact-gradient O-LMC on N(0, I)."""
    if not 0 < h < 2:
        raise ValueError(f"O-LMC on N(0, I) is stable only for 0 < h < 2, got {h!r}")
    return 1.0 / (1.0 - h / 2.0)


def is_plateaued(series: Sequence[float], tolerance: float = 0.01, window: float = 0.1) -> bool:
    """
    True when the relative change over the trailing ``window`` fraction is <= tolerance.

    Non-finite series never plateau.
    """
    values = np.asarray(series, dtype=np.float64)
    if len(values) < 2 or not np.all(np.isfinite(values)):
        return False
    span = max(1, int(math.ceil(window * (len(values) - 1))))
    end = values[-1]
    start = values[-1 - span]
    if end == 0.0:
        return start == 0.0
    return abs(end - start) / abs(end) <= tolerance


def _plateau_proxy(kind: SamplerKind) -> SamplerKind:
    # RCAD has no exact recursion; its full-gradient counterpart stands in
    kind = SamplerKind(kind)
    if kind in ORACLE_KINDS:
        return kind
    return SamplerKind.compose(EstimatorKind.FULL, kind.dynamics)


def steps_to_plateau(
    kind: SamplerKind,
    d: int,
    h: float,
    gamma: float = 1.0,
    initial: Optional[InitialDistribution] = None,
    tolerance: float = 0.01,
    window: float = 0.1,
    cap: int = 200_000,
    start: Optional[int] = None,
) -> int:
    """
    Smallest M in start, 2 start, 4 start, ... whose oracle E|w|^2 prefix has plateaued.

    The series comes from the moment oracle on N(0, I_d); RCAD kinds use their
    full-gradient counterpart. ``start`` defaults to max(16, ceil(1/h)), one unit of
    diffusion time. Returns ``cap`` when no prefix plateaus.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    trajectory = gaussian_chain_moment_propagation(
        d, h, gamma, _plateau_proxy(kind), initial or InitialDistribution(), cap
    )
    if start is None:
        start = max(16, int(math.ceil(1.0 / h)))
    m = max(1, min(start, cap))
    while m < cap:
        if is_plateaued(trajectory.w2[: m + 1], tolerance, window):
            return m
        m *= 2
    return cap


def gaussian_law_w2_trajectory(trajectory: MomentTrajectory) -> np.ndarray:
    """
    Per-step W2 between the x-law of a full-gradient chain and N(0, I_d).

    With exact gradients on N(0, I_d), O-LMC and U-LMC iterates stay isotropic
    Gaussian, so their law is pinned down by mean_x and var_x.
    """
    if trajectory.kind.estimator != EstimatorKind.FULL:
        raise ValueError(f"the law of {trajectory.kind.value} is not Gaussian")
    d = trajectory.dim
    var = np.maximum(trajectory.var_x, 0.0)
    return np.sqrt(d * trajectory.mean_x**2 + d * (np.sqrt(var) - 1.0) ** 2)


def w2_lower_bound_from_moment(ew2: float, d: int) -> float:
    """
    (E|w|^2 - 2d) / (sqrt(E|w|^2) + sqrt(2d)).

    Lower bound on W2 between the law of w = x + v and its stationary law, whose
    second moment is 2d.
    """
    return (ew2 - 2.0 * d) / (math.sqrt(ew2) + math.sqrt(2.0 * d))


def counterexample_w2_lower_bound(d: int, h: float, m: int) -> float:
    """exp(-2mh) sqrt(d) / 1024 + d^{3/2} h / 2304."""
    return math.exp(-2.0 * m * h) * math.sqrt(d) / 1024.0 + d**1.5 * h / 2304.0

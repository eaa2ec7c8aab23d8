"""
Exact second-moment propagation for samplers on the standard Gaussian target.

With f(x) = |x|^2 / 2 and exact gradients every full-gradient and RCD sampler is a
linear-Gaussian recursion, coordinate by coordinate. Writing z = (x_i, v_i), one step is

    z' = A z - c F_i + noise,    F_i = x_i + zeta_i,

where the RCD selection error zeta_i has mean zero and E zeta_i^2 = (d - 1) x_i^2. So the
raw moment matrix S = E z z^T evolves as S' = B S B^T + k S_xx c c^T + Sigma with
B = A - c e_1^T and k = d - 1 for RCD kinds, 0 otherwise.
"""

import math
from typing import List, Tuple

import numpy as np

from rcad_lmc.core.models import InitialDistribution, MomentTrajectory
from rcad_lmc.core.types import Dynamics, EstimatorKind, SamplerKind
from rcad_lmc.kernels.underdamped import transition_covariance, transition_drift

ORACLE_KINDS = (
    SamplerKind.O_LMC,
    SamplerKind.U_LMC,
    SamplerKind.RCD_O_LMC,
    SamplerKind.RCD_U_LMC,
)


def _overdamped_series(
    d: int, h: float, k: float, initial: InitialDistribution, steps: int
) -> Tuple[List[float], List[float]]:
    b = 1.0 - h
    sxx = initial.x_std**2 + initial.x_mean**2
    mean = initial.x_mean
    sxx_out = [sxx]
    mean_out = [mean]
    for _ in range(steps):
        sxx = b * b * sxx + k * h * h * sxx + 2.0 * h
        mean = b * mean
        sxx_out.append(sxx)
        mean_out.append(mean)
    return sxx_out, mean_out


def _underdamped_series(
    d: int, h: float, gamma: float, k: float, initial: InitialDistribution, steps: int
) -> Tuple[List[float], List[float], List[float], List[float]]:
    p, q, e, s = transition_drift(h, gamma)
    sig_xx, sig_vv, sig_xv = transition_covariance(h, gamma)
    # B = [[b11, b12], [b21, b22]], c = (q, s)
    b11, b12, b21, b22 = 1.0 - q, p, -s, e

    mx, mv = initial.x_mean, initial.v_mean
    sxx = initial.x_std**2 + mx * mx
    svv = initial.v_std**2 + mv * mv
    sxv = mx * mv
    out_xx, out_vv, out_xv, out_mx = [sxx], [svv], [sxv], [mx]
    for _ in range(steps):
        n_xx = b11 * b11 * sxx + 2.0 * b11 * b12 * sxv + b12 * b12 * svv
        n_xv = b11 * b21 * sxx + (b11 * b22 + b12 * b21) * sxv + b12 * b22 * svv
        n_vv = b21 * b21 * sxx + 2.0 * b21 * b22 * sxv + b22 * b22 * svv
        selection = k * sxx
        sxx = n_xx + selection * q * q + sig_xx
        sxv = n_xv + selection * q * s + sig_xv
        svv = n_vv + selection * s * s + sig_vv
        mx, mv = b11 * mx + b12 * mv, b21 * mx + b22 * mv
        out_xx.append(sxx)
        out_vv.append(svv)
        out_xv.append(sxv)
        out_mx.append(mx)
    return out_xx, out_vv, out_xv, out_mx


def gaussian_chain_moment_propagation(
    d: int,
    h: float,
    gamma: float,
    kind: SamplerKind,
    initial: InitialDistribution,
    steps: int,
) -> MomentTrajectory:
    """
    Exact E|x^m|^2, E|v^m|^2 and E|x^m + v^m|^2 for m = 0..steps on N(0, I_d).

    The initial law is isotropic Gaussian with scalar means. Overdamped kinds report
    v2 = 0 and w2 = x2.

    Args:
        d: Dimension
        h: Time step
        gamma: Underdamped coupling (ignored for overdamped kinds)
        kind: One of O_LMC, U_LMC, RCD_O_LMC, RCD_U_LMC
        initial: Initial distribution
        steps: Number of steps M

    Raises:
        ValueError: For RCAD kinds (not a linear recursion in the second moments) or
            invalid d, h, steps
    """
    kind = SamplerKind(kind)
    if kind not in ORACLE_KINDS:
        raise ValueError(f"no exact moment recursion for {kind.value}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if h <= 0:
        raise ValueError(f"h must be positive, got {h!r}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")

    k = float(d - 1) if kind.estimator == EstimatorKind.RCD else 0.0
    if kind.dynamics == Dynamics.OVERDAMPED:
        sxx, mean = _overdamped_series(d, h, k, initial, steps)
        x2 = d * np.asarray(sxx)
        v2 = np.zeros_like(x2)
        w2 = x2.copy()
    else:
        sxx, svv, sxv, mean = _underdamped_series(d, h, gamma, k, initial, steps)
        s_xx = np.asarray(sxx)
        s_vv = np.asarray(svv)
        x2 = d * s_xx
        v2 = d * s_vv
        w2 = d * (s_xx + 2.0 * np.asarray(sxv) + s_vv)
    mean_x = np.asarray(mean)
    return MomentTrajectory(
        kind=kind,
        dim=d,
        h=h,
        gamma=gamma,
        x2=x2,
        v2=v2,
        w2=w2,
        mean_x=mean_x,
        var_x=np.asarray(sxx) - mean_x**2,
    )


def _rcad_overdamped_stationary(d: int, h: float) -> float:
    # per coordinate (E x^2, E x g, E g^2); r hits the coordinate with probability 1/d
    a, b = 1.0 - h * d, h * (d - 1)
    refreshed = np.array([[a * a, 2.0 * a * b, b * b], [a, b, 0.0], [1.0, 0.0, 0.0]])
    kept = np.array([[1.0, -2.0 * h, h * h], [0.0, 1.0, -h], [0.0, 0.0, 1.0]])
    step = refreshed / d + kept * (1.0 - 1.0 / d)
    if np.max(np.abs(np.linalg.eigvals(step))) >= 1.0:
        return math.inf
    moments = np.linalg.solve(np.eye(3) - step, np.array([2.0 * h, 0.0, 0.0]))
    return float(moments[0])


def stationary_second_moment(kind: SamplerKind, d: int, h: float, gamma: float = 1.0) -> float:
    """
    Per-coordinate stationary E x_i^2 of an overdamped kind with exact partials.

    O-LMC and RCD-O-LMC are the fixed point of S = ((1 - h)^2 + k h^2) S + 2h. For
    RCAD-O-LMC the memory enters the recursion, which closes on (E x^2, E x g, E g^2);
    with u = d h its fixed point is 2 / (2 - h - 2u (u - h) / (1 + h - u)).

    Returns:
        The moment, or inf when the recursion does not contract
    """
    kind = SamplerKind(kind)
    if kind.dynamics != Dynamics.OVERDAMPED:
        raise ValueError(
            f"closed-form stationary moment only for overdamped kinds, got {kind.value}"
        )
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if h <= 0:
        raise ValueError(f"h must be positive, got {h!r}")
    if kind.estimator == EstimatorKind.RCAD:
        return _rcad_overdamped_stationary(d, h)
    k = d - 1 if kind.estimator == EstimatorKind.RCD else 0
    rate = (1.0 - h) ** 2 + k * h * h
    if rate >= 1.0:
        return math.inf
    return 2.0 * h / (1.0 - rate)

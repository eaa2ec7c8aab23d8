"""Admissibility of (h, eta, gamma) and the explicit error bounds of RCAD-O/U-LMC."""

import math
from typing import Optional, Tuple

from rcad_lmc.core.models import AdmissibilityReport, ConditionCheck, KernelParams
from rcad_lmc.core.targets import TargetModel
from rcad_lmc.core.types import Dynamics

INAPPLICABLE_NOTE = "theory inapplicable: target is not strongly convex (mu = 0)"


def overdamped_h_bound(target: TargetModel) -> float:
    """1 / (3 (1 + 9d) kappa^2 mu)."""
    kappa = target.condition_number
    return 1.0 / (3.0 * (1.0 + 9.0 * target.dim) * kappa**2 * target.mu)


def underdamped_h_bound(target: TargetModel) -> float:
    """The explicit branch 1 / (1648 kappa d); the constant-D branch is not checkable."""
    return 1.0 / (1648.0 * target.condition_number * target.dim)


def _inapplicable(dynamics: Dynamics) -> AdmissibilityReport:
    return AdmissibilityReport(dynamics=dynamics, applicable=False, notes=[INAPPLICABLE_NOTE])


def validate_overdamped_params(target: TargetModel, params: KernelParams) -> AdmissibilityReport:
    """
    Check h < 1/(3(1+9d) kappa^2 mu) and eta < h.

    Targets with mu = 0 are not rejected: the report is flagged as inapplicable and
    carries no checks, so a run may still proceed.

    Args:
        target: Target model
        params: Kernel parameters

    Returns:
        Admissibility report with the binding bound values
    """
    if not target.strongly_convex:
        return _inapplicable(Dynamics.OVERDAMPED)
    bound = overdamped_h_bound(target)
    checks = [
        ConditionCheck(
            name="h",
            passed=params.h < bound,
            value=params.h,
            bound=bound,
            detail="h < 1/(3(1+9d) kappa^2 mu)",
        ),
        ConditionCheck(
            name="eta",
            passed=params.eta < params.h,
            value=params.eta,
            bound=params.h,
            detail="eta < h",
        ),
    ]
    return AdmissibilityReport(dynamics=Dynamics.OVERDAMPED, applicable=True, checks=checks)


def validate_underdamped_params(target: TargetModel, params: KernelParams) -> AdmissibilityReport:
    """
    Check eta < h^3, gamma = 1/L and h <= 1/(1648 kappa d).

    The companion bound h <= 1/(100 (1 + D) kappa) involves an unstated constant D and
    is reported as unchecked.
    """
    if not target.strongly_convex:
        return _inapplicable(Dynamics.UNDERDAMPED)
    gamma_target = 1.0 / target.lip_grad
    h_bound = underdamped_h_bound(target)
    checks = [
        ConditionCheck(
            name="eta",
            passed=params.eta < params.h**3,
            value=params.eta,
            bound=params.h**3,
            detail="eta < h^3",
        ),
        ConditionCheck(
            name="gamma",
            passed=math.isclose(params.gamma, gamma_target, rel_tol=1e-12),
            value=params.gamma,
            bound=gamma_target,
            detail="gamma = 1/L",
        ),
        ConditionCheck(
            name="h",
            passed=params.h <= h_bound,
            value=params.h,
            bound=h_bound,
            detail="h <= 1/(1648 kappa d)",
        ),
        ConditionCheck(
            name="h_D",
            passed=None,
            value=params.h,
            detail="h <= 1/(100(1+D) kappa): constant D unknown, indeterminate",
        ),
    ]
    return AdmissibilityReport(dynamics=Dynamics.UNDERDAMPED, applicable=True, checks=checks)


def validate_params(
    target: TargetModel, params: KernelParams, dynamics: Dynamics
) -> AdmissibilityReport:
    if dynamics == Dynamics.OVERDAMPED:
        return validate_overdamped_params(target, params)
    return validate_underdamped_params(target, params)


def _require_strongly_convex(target: TargetModel) -> None:
    if not target.strongly_convex:
        raise ValueError(INAPPLICABLE_NOTE)


def overdamped_error_bound(
    target: TargetModel, params: KernelParams, m: int, w2_initial: float
) -> float:
    """
    Upper bound on W2 between the RCAD-O-LMC iterate law at step m and the target.

    exp(-mu h m / 4) sqrt(1 + 1/kappa^2) W0 + 2h sqrt(d^3 C1 + d^2 C2) with
    C1 = 77 kappa^2 mu and C2 = H^2/mu^2 + 20 kappa^2 + kappa^3 mu / d.
    """
    _require_strongly_convex(target)
    if target.lip_hess is None:
        raise ValueError("the overdamped bound needs the hessian Lipschitz constant H")
    mu, kappa, d = target.mu, target.condition_number, target.dim
    c1 = 77.0 * kappa**2 * mu
    c2 = target.lip_hess**2 / mu**2 + 20.0 * kappa**2 + kappa**3 * mu / d
    contraction = math.exp(-mu * params.h * m / 4.0) * math.sqrt(1.0 + 1.0 / kappa**2)
    return contraction * w2_initial + 2.0 * params.h * math.sqrt(d**3 * c1 + d**2 * c2)


def underdamped_error_bound(
    target: TargetModel, params: KernelParams, m: int, w2_initial: float
) -> float:
    """Upper bound on W2 for RCAD-U-LMC with gamma = 1/L."""
    _require_strongly_convex(target)
    mu, kappa, d, h = target.mu, target.condition_number, target.dim, params.h
    return (
        4.0 * math.sqrt(2.0) * math.exp(-h * m / (8.0 * kappa)) * w2_initial
        + 600.0 * math.sqrt(h**3 * d**4 / mu)
        + 200.0 * math.sqrt(kappa * h**2 * d / mu)
        + 350.0 * math.sqrt(kappa * h**5 * d**2)
    )


def recommend_overdamped_params(
    target: TargetModel, epsilon: float, w2_initial: float
) -> Tuple[KernelParams, int]:
    """
    Stepsizes and stopping index reaching W2 <= epsilon for RCAD-O-LMC.

    Each of the two terms of the error bound is held below epsilon / 2.

    Returns:
        (params, M) with eta = h / 10
    """
    _require_strongly_convex(target)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if target.lip_hess is None:
        raise ValueError("the overdamped recipe needs the hessian Lipschitz constant H")
    mu, kappa, d = target.mu, target.condition_number, target.dim
    c1 = 77.0 * kappa**2 * mu
    c2 = target.lip_hess**2 / mu**2 + 20.0 * kappa**2 + kappa**3 * mu / d
    bias_bound = epsilon / (4.0 * d**1.5 * math.sqrt(c1 + c2 / d))
    # strict inequality on the admissibility bound
    h = min(math.nextafter(overdamped_h_bound(target), 0.0), bias_bound)
    steps = _stopping_index(
        rate=h * mu / 4.0, scale=2.0 * math.sqrt(1.0 + 1.0 / kappa**2) * w2_initial / epsilon
    )
    return KernelParams(h=h, eta=h / 10.0, gamma=1.0 / target.lip_grad), steps


def recommend_underdamped_params(
    target: TargetModel, epsilon: float, w2_initial: float
) -> Tuple[KernelParams, int]:
    """
    Stepsizes and stopping index reaching W2 <= epsilon for RCAD-U-LMC.

    Every term of the error bound is held below epsilon / 4. The branch involving the
    unknown constant D is omitted.

    Returns:
        (params, M) with eta = h^3 / 10 and gamma = 1/L
    """
    _require_strongly_convex(target)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    mu, kappa, d = target.mu, target.condition_number, target.dim
    h = min(
        epsilon ** (2.0 / 3.0) * mu ** (1.0 / 3.0) / (2400.0 ** (2.0 / 3.0) * d ** (4.0 / 3.0)),
        epsilon * math.sqrt(mu) / (800.0 * math.sqrt(kappa * d)),
        epsilon**0.4 / (1400.0**0.4 * kappa**0.2 * d**0.4),
        underdamped_h_bound(target),
    )
    steps = _stopping_index(
        rate=h / (8.0 * kappa), scale=16.0 * math.sqrt(2.0) * w2_initial / epsilon
    )
    return KernelParams(h=h, eta=h**3 / 10.0, gamma=1.0 / target.lip_grad), steps


def _stopping_index(rate: float, scale: float) -> int:
    if scale <= 1.0:
        return 0
    return int(math.ceil(math.log(scale) / rate))


def condition_summary(target: TargetModel) -> Optional[str]:
    """Short description of the regularity constants, None for non-convex targets."""
    if not target.strongly_convex:
        return None
    return (
        f"d={target.dim}, mu={target.mu:g}, L={target.lip_grad:g}, "
        f"kappa={target.condition_number:g}"
    )

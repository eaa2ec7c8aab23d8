"""Stationary-moment check of underdamped samplers on the isotropic Gaussian."""

import logging
import math
from typing import Optional

import numpy as np

from rcad_lmc.config.settings import settings
from rcad_lmc.core.models import (
    ChainConfig,
    CounterexampleReport,
    InitialDistribution,
    KernelParams,
)
from rcad_lmc.core.targets import GaussianTarget
from rcad_lmc.core.types import Dynamics, GradientMode, SamplerKind
from rcad_lmc.diagnostics.metrics import (
    counterexample_w2_lower_bound,
    is_plateaued,
    w2_lower_bound_from_moment,
)
from rcad_lmc.kernels.moments import ORACLE_KINDS, gaussian_chain_moment_propagation
from rcad_lmc.samplers.ensemble import run_ensemble

logger = logging.getLogger(__name__)

# initial law: x ~ N(u 1, I_d) with u = 1/8, v ~ N(0, I_d)
COUNTEREXAMPLE_SHIFT = 0.125
COUNTEREXAMPLE_INITIAL = InitialDistribution(x_mean=COUNTEREXAMPLE_SHIFT, x_std=1.0)
AGREEMENT_SE = 3.0


def default_steps(h: float) -> int:
    """ceil(50 / h): fifty units of time, far past the exp(-t) transient."""
    return int(math.ceil(50.0 / h))


def excess_lower_bound(d: int, h: float) -> float:
    """d^2 h / 288."""
    return d * d * h / 288.0


async def counterexample_check(
    d: int,
    h: float,
    steps: Optional[int] = None,
    chains: int = 0,
    seed: int = 0,
    kind: SamplerKind = SamplerKind.RCD_U_LMC,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
) -> CounterexampleReport:
    """
    Compare E|x^M + v^M|^2 of an underdamped chain on N(0, I_d) against 2d.

    Runs with gamma = 1, exact gradients and the shifted initial law. The oracle value
    always comes from the moment recursion; with ``chains > 0`` an ensemble is also run
    and its estimate reported with a standard error.

    Args:
        d: Dimension
        h: Time step
        steps: M; defaults to ceil(50 / h)
        chains: Ensemble size, 0 for oracle only
        seed: Master seed for the ensemble
        kind: RCD_U_LMC, or U_LMC for the control
        threads: Concurrent blocks; defaults to settings
        block_size: Chains per block; defaults to settings

    Returns:
        CounterexampleReport
    """
    kind = SamplerKind(kind)
    if kind.dynamics != Dynamics.UNDERDAMPED or kind not in ORACLE_KINDS:
        raise ValueError(f"counterexample_check needs U_LMC or RCD_U_LMC, got {kind.value}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if chains < 0 or chains == 1:
        raise ValueError(f"chains must be 0 or >= 2, got {chains}")
    m = default_steps(h) if steps is None else steps
    gamma = 1.0
    plateau = settings.get_plateau_config()

    trajectory = gaussian_chain_moment_propagation(
        d, h, gamma, kind, COUNTEREXAMPLE_INITIAL, m
    )
    oracle_w2 = float(trajectory.w2[-1])
    report = CounterexampleReport(
        kind=kind,
        d=d,
        h=h,
        steps=m,
        chains=chains,
        oracle_w2=oracle_w2,
        oracle_excess=oracle_w2 - 2.0 * d,
        lower_bound=excess_lower_bound(d, h),
        w2_lower_bound=w2_lower_bound_from_moment(oracle_w2, d),
        theorem_w2_bound=counterexample_w2_lower_bound(d, h, m),
        stationary=is_plateaued(trajectory.w2, plateau.tolerance, plateau.window),
    )
    if not report.stationary:
        logger.warning(
            "Second moment has not plateaued", extra={"d": d, "h": h, "steps": m}
        )
    if chains == 0:
        return report

    ensemble_config = settings.get_ensemble_config()
    config = ChainConfig(
        target=GaussianTarget(mean=np.zeros(d)),
        kind=kind,
        params=KernelParams(h=h, eta=h**3 / 10.0, gamma=gamma),
        steps=m,
        seed=seed,
        initial=COUNTEREXAMPLE_INITIAL,
        gradient_mode=GradientMode.EXACT,
    )
    output = await run_ensemble(
        config,
        chains,
        threads=ensemble_config.threads if threads is None else threads,
        block_size=ensemble_config.block_size if block_size is None else block_size,
    )
    if output.v is None:
        raise RuntimeError("underdamped ensemble returned no velocities")
    w = output.x + output.v
    values = np.sum(w * w, axis=1)
    measured = math.fsum(values.tolist()) / chains
    std_error = float(np.std(values, ddof=1)) / math.sqrt(chains)
    agreement = abs(measured - oracle_w2) <= AGREEMENT_SE * std_error

    logger.info(
        "Counterexample check complete",
        extra={"d": d, "h": h, "oracle_w2": oracle_w2, "measured_w2": measured},
    )
    return report.model_copy(
        update={
            "measured_w2": measured,
            "std_error": std_error,
            "measured_excess": measured - 2.0 * d,
            "agreement": agreement,
            "divergence_fraction": output.divergence_fraction,
        }
    )

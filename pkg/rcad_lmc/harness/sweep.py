"""Sampler x stepsize sweeps."""

import logging
import math
from typing import Dict, List, Optional

from rcad_lmc import __version__
from rcad_lmc.config.settings import settings
from rcad_lmc.core.exceptions import IndefiniteCovarianceError
from rcad_lmc.core.models import ChainConfig, SweepResult, SweepRow, SweepSpec
from rcad_lmc.core.targets import TargetModel
from rcad_lmc.core.types import SamplerKind, SweepStatus
from rcad_lmc.diagnostics.metrics import moment_error, steps_to_plateau
from rcad_lmc.samplers.ensemble import derive_seed, run_ensemble

logger = logging.getLogger(__name__)


def sweep_comments(spec: SweepSpec) -> List[str]:
    """Provenance lines: library version, config echo and admissibility warnings."""
    lines = [f"rcad_lmc {__version__}"]
    lines.extend(f"config: {line}" for line in spec.echo)
    lines.extend(f"warning: {warning}" for warning in spec.warnings)
    return lines


def resolve_steps(spec: SweepSpec, kind: SamplerKind, h: float, target: TargetModel) -> int:
    """M for one cell: fixed, or the oracle plateau capped at the rule's value."""
    if spec.steps.mode == "fixed":
        return spec.steps.value
    plateau = settings.get_plateau_config()
    return steps_to_plateau(
        kind,
        spec.d,
        h,
        gamma=spec.resolve_gamma(target),
        initial=spec.initial,
        tolerance=plateau.tolerance,
        window=plateau.window,
        cap=min(spec.steps.value, plateau.cap),
    )


def _log_status(status: SweepStatus, kind: SamplerKind, h: float, **extra: object) -> None:
    logger.info(
        "Sweep cell", extra={"status": status.value, "sampler": kind.value, "h": h, **extra}
    )


async def run_sweep(
    spec: SweepSpec,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
    failure_threshold: Optional[float] = None,
) -> SweepResult:
    """
    Run every (sampler, h) cell of a sweep and measure the |x_1|^2 moment error.

    Cell c (in declared sampler-major order) uses the seed ``derive_seed(spec.seed, c)``.
    A cell whose divergence fraction exceeds the failure threshold is marked FAILED with
    error = nan and the sweep continues.

    Args:
        spec: Validated sweep config
        threads: Concurrent chain blocks; defaults to settings
        block_size: Chains per block; defaults to settings
        failure_threshold: Divergence fraction beyond which a cell fails

    Returns:
        SweepResult with one row per cell, in declared order
    """
    ensemble = settings.get_ensemble_config()
    threads = ensemble.threads if threads is None else threads
    block_size = ensemble.block_size if block_size is None else block_size
    threshold = settings.failure_threshold if failure_threshold is None else failure_threshold

    target = spec.target.build(spec.d)
    reference = target.first_coordinate_second_moment()
    result = SweepResult(comments=sweep_comments(spec))

    cells = [(kind, h) for kind in spec.samplers for h in spec.h]
    logger.info(
        "Starting sweep",
        extra={"cells": len(cells), "target": spec.target.name, "d": spec.d, "n": spec.n},
    )
    for index, (kind, h) in enumerate(cells):
        _log_status(SweepStatus.PENDING, kind, h, cell=index)
        params = spec.kernel_params(kind, h, target)
        steps = resolve_steps(spec, kind, h, target)
        seed = derive_seed(spec.seed, index)
        row = SweepRow(
            sampler=kind,
            d=spec.d,
            h=h,
            eta=params.eta,
            M=steps,
            N=spec.n,
            error=math.nan,
            std_error=math.nan,
            evals=0,
            wall_ms=0.0,
            seed=seed,
            status=SweepStatus.RUNNING,
        )
        _log_status(SweepStatus.RUNNING, kind, h, steps=steps, seed=seed)

        config = ChainConfig(
            target=target,
            kind=kind,
            params=params,
            steps=steps,
            seed=seed,
            initial=spec.initial,
            gradient_mode=spec.gradient_mode,
        )
        try:
            output = await run_ensemble(config, spec.n, threads=threads, block_size=block_size)
        except IndefiniteCovarianceError as e:
            logger.error(
                "Sweep cell aborted", extra={"sampler": kind.value, "h": h, "error": str(e)}
            )
            result.rows.append(row.model_copy(update={"status": SweepStatus.FAILED}))
            _log_status(SweepStatus.FAILED, kind, h)
            continue

        finite = output.finite_x()
        fraction = output.divergence_fraction
        update: Dict[str, object] = {
            "evals": output.total_evals,
            "wall_ms": output.wall_time_s * 1000.0,
            "divergence_fraction": fraction,
            "diverged": int(output.diverged.sum()),
        }
        if fraction > threshold or len(finite) < 2:
            update["status"] = SweepStatus.FAILED
            _log_status(SweepStatus.FAILED, kind, h, divergence_fraction=fraction)
        else:
            report = moment_error(finite, reference)
            update.update(
                error=report.error,
                std_error=report.std_error,
                status=SweepStatus.COMPLETED,
            )
            _log_status(SweepStatus.COMPLETED, kind, h, error=report.error)
        result.rows.append(row.model_copy(update=update))

    logger.info(
        "Sweep complete",
        extra={"rows": len(result.rows), "failed": len(result.failed_rows)},
    )
    return result

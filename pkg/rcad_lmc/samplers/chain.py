"""Single-chain and block runners."""

import logging
import time
from typing import List, Optional, Sequence

import numpy as np

from rcad_lmc.core.models import ChainConfig, ChainOutput, EnsembleOutput
from rcad_lmc.core.types import EstimatorKind, SamplerKind
from rcad_lmc.samplers.base import SamplerFactory
from rcad_lmc.samplers.streams import BlockStreams

logger = logging.getLogger(__name__)


def expected_evals(kind: SamplerKind, d: int, steps: int) -> int:
    """Per-chain derivative evaluations: M d (full), M (RCD), d + M (RCAD)."""
    estimator = SamplerKind(kind).estimator
    if estimator == EstimatorKind.FULL:
        return steps * d
    if estimator == EstimatorKind.RCD:
        return steps
    return d + steps


def _all_finite(x: np.ndarray, v: Optional[np.ndarray]) -> np.ndarray:
    ok = np.isfinite(x).all(axis=-1)
    if v is not None:
        ok &= np.isfinite(v).all(axis=-1)
    return ok


def run_block(config: ChainConfig, seeds: Sequence[int]) -> EnsembleOutput:
    """
    Run one chain per seed, vectorised across the block.

    Chain j reads its own streams from ``chain_streams(seeds[j])``: the initial state
    comes from the first noise row, and each step takes one coordinate (RCD and RCAD
    kinds with d > 1) and one noise row. A chain whose state turns non-finite is frozen
    at its last finite state, flagged, and stops accruing evaluations.

    Args:
        config: Chain configuration; ``config.seed`` is not used here
        seeds: One seed per chain, at least one

    Returns:
        EnsembleOutput for the block, in seed order
    """
    if len(seeds) < 1:
        raise ValueError("run_block needs at least one chain seed")
    started = time.perf_counter()
    sampler = SamplerFactory.create(config)
    estimator = sampler.create_estimator()
    d = sampler.dim
    n_chains = len(seeds)
    streams = BlockStreams(seeds, sampler.noise_width, d)
    zeros = np.zeros(n_chains, dtype=np.int64)

    x, v = sampler.initial_state(streams.normals(1)[:, 0, :])
    estimator.initialize(x)
    evals = np.full(n_chains, estimator.evals, dtype=np.int64)
    diverged = np.zeros(n_chains, dtype=bool)
    diverged_at = np.full(n_chains, -1, dtype=np.int64)

    traj_x: List[np.ndarray] = []
    traj_v: List[np.ndarray] = []
    if config.thin is not None:
        traj_x.append(x.copy())
        if v is not None:
            traj_v.append(v.copy())

    with np.errstate(over="ignore", invalid="ignore"):
        for first in range(1, config.steps + 1, streams.chunk):
            rows = min(streams.chunk, config.steps + 1 - first)
            noise = streams.normals(rows)
            coordinates = streams.coordinates(rows) if estimator.needs_coordinate else None
            for j in range(rows):
                m = first + j
                r = zeros if coordinates is None else coordinates[:, j]
                before = estimator.evals
                flux = estimator.flux(x, r)
                x_new, v_new = sampler.propagate(x, v, flux, noise[:, j, :])

                active = ~diverged
                evals[active] += estimator.evals - before
                blown = active & ~_all_finite(x_new, v_new)
                if blown.any():
                    diverged_at[blown] = m
                    diverged |= blown
                    logger.debug(
                        "Chains diverged", extra={"step": m, "count": int(blown.sum())}
                    )
                if diverged.any():
                    keep = diverged[:, None]
                    x_new = np.where(keep, x, x_new)
                    if v is not None and v_new is not None:
                        v_new = np.where(keep, v, v_new)
                x, v = x_new, v_new

                if config.thin is not None and m % config.thin == 0:
                    traj_x.append(x.copy())
                    if v is not None:
                        traj_v.append(v.copy())

    return EnsembleOutput(
        kind=config.kind,
        block_size=n_chains,
        seeds=[int(s) for s in seeds],
        x=x,
        v=v,
        trajectory_x=np.stack(traj_x) if traj_x else None,
        trajectory_v=np.stack(traj_v) if traj_v else None,
        memory=estimator.memory,
        evals=evals,
        diverged=diverged,
        diverged_at=diverged_at,
        wall_time_s=time.perf_counter() - started,
    )


def run_chain(config: ChainConfig) -> ChainOutput:
    """
    Run one chain for ``config.steps`` steps.

    Args:
        config: Chain configuration; ``seed`` seeds the chain's own streams

    Returns:
        Final state, optional thinned trajectory, eval count and divergence flag
    """
    logger.debug(
        "Running chain",
        extra={"kind": config.kind.value, "steps": config.steps, "seed": config.seed},
    )
    return run_block(config, [config.seed]).chain(0)

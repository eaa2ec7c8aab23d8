"""Ensembles of independent chains with schedule-independent seeding."""

import asyncio
import logging
import os
import time
from typing import List, Optional

import numpy as np

from rcad_lmc.core.models import ChainConfig, EnsembleOutput
from rcad_lmc.samplers.chain import run_block

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 4096


def derive_seed(master_seed: int, index: int) -> int:
    """
    Child seed for chain or cell ``index``, split from ``master_seed``.

    Uses numpy's SeedSequence so that children are statistically independent.
    """
    if master_seed < 0 or index < 0:
        raise ValueError("seeds and indices must be non-negative")
    state = np.random.SeedSequence([master_seed, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def resolve_threads(threads: Optional[int]) -> int:
    """0 or None means one worker per CPU."""
    if not threads:
        return os.cpu_count() or 1
    if threads < 0:
        raise ValueError(f"threads must be >= 0, got {threads}")
    return threads


def _block_ranges(n_chains: int, block_size: int) -> List[range]:
    return [range(s, min(s + block_size, n_chains)) for s in range(0, n_chains, block_size)]


def _stack(parts: List[Optional[np.ndarray]], axis: int) -> Optional[np.ndarray]:
    if any(p is None for p in parts):
        return None
    return np.concatenate(parts, axis=axis)  # type: ignore[arg-type]


def _run_range(config: ChainConfig, chains: range) -> EnsembleOutput:
    return run_block(config, [derive_seed(config.seed, i) for i in chains])


async def run_ensemble(
    config: ChainConfig,
    n_chains: int,
    threads: Optional[int] = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> EnsembleOutput:
    """
    Run ``n_chains`` independent chains.

    Chain i is seeded with ``derive_seed(config.seed, i)``, so it replays exactly under
    ``run_chain`` and does not depend on N, ``block_size`` or ``threads``. Chains are
    grouped into blocks of ``block_size`` that run vectorised in worker threads; results
    are stacked in chain order.

    Args:
        config: Template configuration; ``seed`` is the master seed
        n_chains: Number of chains N, >= 1
        threads: Concurrent blocks; 0 or None for one per CPU
        block_size: Chains per block

    Returns:
        Stacked ensemble output
    """
    if n_chains < 1:
        raise ValueError(f"n_chains must be >= 1, got {n_chains}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    workers = resolve_threads(threads)
    ranges = _block_ranges(n_chains, block_size)
    semaphore = asyncio.Semaphore(workers)

    logger.info(
        "Starting ensemble",
        extra={
            "kind": config.kind.value,
            "chains": n_chains,
            "blocks": len(ranges),
            "threads": workers,
        },
    )
    started = time.perf_counter()

    async def _run(chains: range) -> EnsembleOutput:
        async with semaphore:
            return await asyncio.to_thread(_run_range, config, chains)

    blocks = await asyncio.gather(*(_run(r) for r in ranges))

    output = EnsembleOutput(
        kind=config.kind,
        master_seed=config.seed,
        block_size=block_size,
        seeds=[s for b in blocks for s in b.seeds],
        x=np.concatenate([b.x for b in blocks]),
        v=_stack([b.v for b in blocks], axis=0),
        trajectory_x=_stack([b.trajectory_x for b in blocks], axis=1),
        trajectory_v=_stack([b.trajectory_v for b in blocks], axis=1),
        memory=_stack([b.memory for b in blocks], axis=0),
        evals=np.concatenate([b.evals for b in blocks]),
        diverged=np.concatenate([b.diverged for b in blocks]),
        diverged_at=np.concatenate([b.diverged_at for b in blocks]),
        wall_time_s=time.perf_counter() - started,
    )
    logger.info(
        "Ensemble complete",
        extra={
            "kind": config.kind.value,
            "total_evals": output.total_evals,
            "divergence_fraction": output.divergence_fraction,
        },
    )
    return output

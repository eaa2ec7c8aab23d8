"""Langevin samplers and ensemble runners."""

from rcad_lmc.samplers.base import (
    BaseSampler,
    OverdampedSampler,
    SamplerFactory,
    UnderdampedSampler,
)
from rcad_lmc.samplers.chain import expected_evals, run_block, run_chain
from rcad_lmc.samplers.ensemble import derive_seed, resolve_threads, run_ensemble
from rcad_lmc.samplers.streams import BlockStreams, chain_streams

__all__ = [
    "BaseSampler",
    "OverdampedSampler",
    "UnderdampedSampler",
    "SamplerFactory",
    "expected_evals",
    "run_block",
    "run_chain",
    "derive_seed",
    "resolve_threads",
    "run_ensemble",
    "BlockStreams",
    "chain_streams",
]

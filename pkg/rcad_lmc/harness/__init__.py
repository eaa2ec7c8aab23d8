"""Batch experiment harness: config parsing, sweeps and the CLI."""

from rcad_lmc.harness.config_parser import load_config, parse_config
from rcad_lmc.harness.sweep import run_sweep, sweep_comments

__all__ = [
    "parse_config",
    "load_config",
    "run_sweep",
    "sweep_comments",
]

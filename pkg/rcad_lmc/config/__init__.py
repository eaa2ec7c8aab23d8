"""Configuration management for RCAD-LMC."""

from rcad_lmc.config.settings import (
    EnsembleConfig,
    PlateauConfig,
    Settings,
    settings,
)

__all__ = [
    "Settings",
    "EnsembleConfig",
    "PlateauConfig",
    "settings",
]

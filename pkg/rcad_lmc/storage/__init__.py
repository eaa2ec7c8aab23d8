"""Storage for sweep results."""

from rcad_lmc.storage.base import BaseResultStorage
from rcad_lmc.storage.csv_storage import (
    COUNTEREXAMPLE_COLUMNS,
    CSVResultStorage,
    emit_counterexample_csv,
    emit_csv,
    format_float,
)

__all__ = [
    "BaseResultStorage",
    "CSVResultStorage",
    "COUNTEREXAMPLE_COLUMNS",
    "emit_csv",
    "emit_counterexample_csv",
    "format_float",
]

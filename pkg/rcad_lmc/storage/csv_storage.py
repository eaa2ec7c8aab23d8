"""CSV file storage for sweep and counterexample results."""

import asyncio
import csv
import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from rcad_lmc.core.exceptions import ResultStorageError
from rcad_lmc.core.models import CSV_COLUMNS, CounterexampleReport, SweepResult, SweepRow
from rcad_lmc.storage.base import BaseResultStorage

PathLike = Union[str, Path]

COUNTEREXAMPLE_COLUMNS = (
    "sampler",
    "d",
    "h",
    "M",
    "N",
    "oracle_w2",
    "oracle_excess",
    "lower_bound",
    "measured_w2",
    "std_error",
    "measured_excess",
    "agreement",
    "stationary",
    "w2_lower_bound",
    "theorem_w2_bound",
)


def format_float(value: Optional[float]) -> str:
    """17 significant digits, so float(format_float(x)) == x."""
    if value is None:
        return "nan"
    if math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def _sweep_record(row: SweepRow, timings: bool) -> List[str]:
    return [
        row.sampler.value,
        str(row.d),
        format_float(row.h),
        format_float(row.eta),
        str(row.M),
        str(row.N),
        format_float(row.error),
        format_float(row.std_error),
        str(row.evals),
        format_float(row.wall_ms if timings else 0.0),
        str(row.seed),
        str(row.diverged),
    ]


def _counterexample_record(report: CounterexampleReport) -> List[str]:
    agreement = "" if report.agreement is None else str(report.agreement).lower()
    return [
        report.kind.value,
        str(report.d),
        format_float(report.h),
        str(report.steps),
        str(report.chains),
        format_float(report.oracle_w2),
        format_float(report.oracle_excess),
        format_float(report.lower_bound),
        format_float(report.measured_w2),
        format_float(report.std_error),
        format_float(report.measured_excess),
        agreement,
        str(report.stationary).lower(),
        format_float(report.w2_lower_bound),
        format_float(report.theorem_w2_bound),
    ]


def _write(
    path: PathLike,
    comments: Iterable[str],
    header: Sequence[str],
    records: Iterable[List[str]],
) -> None:
    target = Path(path)
    try:
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as f:
            for line in comments:
                f.write(f"# {line}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(records)
    except OSError as e:
        raise ResultStorageError(str(target), e.strerror or str(e)) from e


def emit_csv(result: SweepResult, path: PathLike, timings: bool = True) -> None:
    """
    Write a sweep result as CSV.

    ``#`` comment lines come first, then the header and one row per cell. With
    ``timings`` off, wall_ms is written as 0.

    Raises:
        ResultStorageError: On any I/O failure, carrying the path
    """
    _write(
        path,
        result.comments,
        CSV_COLUMNS,
        (_sweep_record(row, timings) for row in result.rows),
    )


def emit_counterexample_csv(
    reports: Sequence[CounterexampleReport], path: PathLike, comments: Sequence[str] = ()
) -> None:
    _write(path, comments, COUNTEREXAMPLE_COLUMNS, (_counterexample_record(r) for r in reports))


class CSVResultStorage(BaseResultStorage):
    """CSV file storage; writes run in a worker thread."""

    def __init__(self, path: PathLike, record_wall_time: bool = True):
        """
        Initialize CSV storage.

        Args:
            path: Output file
            record_wall_time: Write measured wall_ms; 0 otherwise
        """
        self.path = Path(path)
        self.record_wall_time = record_wall_time
        self._lock = asyncio.Lock()

    async def write_sweep(self, result: SweepResult) -> None:
        async with self._lock:
            await asyncio.to_thread(emit_csv, result, self.path, self.record_wall_time)

    async def write_counterexample(
        self, reports: Sequence[CounterexampleReport], comments: List[str]
    ) -> None:
        async with self._lock:
            await asyncio.to_thread(emit_counterexample_csv, reports, self.path, comments)

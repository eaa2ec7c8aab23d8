"""Base storage interface for sweep results."""

from abc import ABC, abstractmethod
from typing import List, Sequence

from rcad_lmc.core.models import CounterexampleReport, SweepResult


class BaseResultStorage(ABC):
    """Abstract base class for result storage."""

    @abstractmethod
    async def write_sweep(self, result: SweepResult) -> None:
        """
        Store a sweep result.

        Args:
            result: Rows in declared order plus provenance comments
        """
        pass

    @abstractmethod
    async def write_counterexample(
        self, reports: Sequence[CounterexampleReport], comments: List[str]
    ) -> None:
        """
        Store counterexample reports, one row per report.

        Args:
            reports: Reports in output order
            comments: Provenance lines
        """
        pass

"""Type definitions for the RCAD-LMC library."""

from enum import Enum


class Dynamics(str, Enum):
    """Langevin dynamics a sampler discretizes."""

    OVERDAMPED = "overdamped"
    UNDERDAMPED = "underdamped"


class EstimatorKind(str, Enum):
    """Gradient strategies used to build the flux."""

    FULL = "full"
    RCD = "rcd"
    RCAD = "rcad"


class GradientMode(str, Enum):
    """How single partial derivatives are obtained."""

    FINITE_DIFFERENCE = "finite_difference"
    EXACT = "exact"


class SamplerKind(str, Enum):
    """The six sampler variants."""

    O_LMC = "O_LMC"
    U_LMC = "U_LMC"
    RCD_O_LMC = "RCD_O_LMC"
    RCD_U_LMC = "RCD_U_LMC"
    RCAD_O_LMC = "RCAD_O_LMC"
    RCAD_U_LMC = "RCAD_U_LMC"

    @property
    def dynamics(self) -> Dynamics:
        if self.value.endswith("O_LMC"):
            return Dynamics.OVERDAMPED
        return Dynamics.UNDERDAMPED

    @property
    def estimator(self) -> EstimatorKind:
        if self.value.startswith("RCAD_"):
            return EstimatorKind.RCAD
        if self.value.startswith("RCD_"):
            return EstimatorKind.RCD
        return EstimatorKind.FULL

    @classmethod
    def compose(cls, estimator: EstimatorKind, dynamics: Dynamics) -> "SamplerKind":
        """Return the kind pairing an estimator with a dynamics."""
        prefix = "" if estimator == EstimatorKind.FULL else f"{estimator.value.upper()}_"
        suffix = "O_LMC" if dynamics == Dynamics.OVERDAMPED else "U_LMC"
        return cls(prefix + suffix)


class SweepStatus(str, Enum):
    """Status of a sweep cell."""

    PENDING = "PENDING"
    RUNNING = "RUNNING"
    COMPLETED = "COMPLETED"
    FAILED = "FAILED"

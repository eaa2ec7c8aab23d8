"""Exceptions raised by the RCAD-LMC library."""

from typing import Optional


class RCADLMCError(Exception):
    """Base class for library errors."""


class ConfigError(RCADLMCError, ValueError):
    """Invalid sweep configuration text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndefiniteCovarianceError(RCADLMCError, ArithmeticError):
    """The underdamped 2x2 transition covariance is numerically indefinite."""

    def __init__(self, cov_xx: float, cov_vv: float, cov_xv: float):
        self.determinant = cov_xx * cov_vv - cov_xv * cov_xv
        super().__init__(
            f"indefinite transition covariance: cov_xx={cov_xx!r}, cov_vv={cov_vv!r}, "
            f"cov_xv={cov_xv!r}, determinant={self.determinant!r}"
        )


class DivergenceError(RCADLMCError, RuntimeError):
    """Too many chains diverged in a sweep cell."""


class ResultStorageError(RCADLMCError, OSError):
    """Writing results failed."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"cannot write results to {path}: {reason}")

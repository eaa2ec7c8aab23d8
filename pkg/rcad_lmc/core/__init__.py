"""Core abstractions: types, targets, data models, validation and exceptions."""

from rcad_lmc.core.exceptions import (
    ConfigError,
    DivergenceError,
    IndefiniteCovarianceError,
    RCADLMCError,
    ResultStorageError,
)
from rcad_lmc.core.models import (
    AdmissibilityReport,
    ChainConfig,
    ChainOutput,
    ConditionCheck,
    CounterexampleReport,
    EnsembleOutput,
    FluxResult,
    GradMemory,
    InitialDistribution,
    KernelParams,
    MomentErrorReport,
    MomentTrajectory,
    OverdampedState,
    SweepResult,
    SweepRow,
    SweepSpec,
    UnderdampedMoments,
    UnderdampedState,
)
from rcad_lmc.core.targets import (
    CustomTarget,
    GaussianTarget,
    MixtureTarget,
    QuadraticTarget,
    TargetModel,
    build_target,
)
from rcad_lmc.core.types import (
    Dynamics,
    EstimatorKind,
    GradientMode,
    SamplerKind,
    SweepStatus,
)
from rcad_lmc.core.validation import (
    recommend_overdamped_params,
    recommend_underdamped_params,
    overdamped_error_bound,
    underdamped_error_bound,
    validate_overdamped_params,
    validate_params,
    validate_underdamped_params,
)

__all__ = [
    "Dynamics",
    "EstimatorKind",
    "GradientMode",
    "SamplerKind",
    "SweepStatus",
    "TargetModel",
    "GaussianTarget",
    "QuadraticTarget",
    "MixtureTarget",
    "CustomTarget",
    "build_target",
    "KernelParams",
    "ConditionCheck",
    "AdmissibilityReport",
    "GradMemory",
    "FluxResult",
    "OverdampedState",
    "UnderdampedState",
    "UnderdampedMoments",
    "MomentTrajectory",
    "InitialDistribution",
    "ChainConfig",
    "ChainOutput",
    "EnsembleOutput",
    "MomentErrorReport",
    "CounterexampleReport",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "validate_overdamped_params",
    "validate_underdamped_params",
    "validate_params",
    "overdamped_error_bound",
    "underdamped_error_bound",
    "recommend_overdamped_params",
    "recommend_underdamped_params",
    "RCADLMCError",
    "ConfigError",
    "IndefiniteCovarianceError",
    "DivergenceError",
    "ResultStorageError",
]

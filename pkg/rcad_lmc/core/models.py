"""Data models for the RCAD-LMC library."""

from typing import Any, Dict, Iterator, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from rcad_lmc.core.targets import TargetModel, build_target
from rcad_lmc.core.types import Dynamics, GradientMode, SamplerKind, SweepStatus


class ArrayModel(BaseModel):
    """Base for models carrying numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True)


# ---------------------------------------------------------------------------
# core_model
# ---------------------------------------------------------------------------


class KernelParams(BaseModel):
    """Time step, finite-difference step and underdamped coupling."""

    model_config = ConfigDict(frozen=True)

    h: float = Field(gt=0)
    eta: float = Field(gt=0)
    gamma: float = Field(default=1.0, gt=0)


class ConditionCheck(BaseModel):
    """One admissibility condition. ``passed`` is None when it cannot be checked."""

    name: str
    passed: Optional[bool]
    value: Optional[float] = None
    bound: Optional[float] = None
    detail: str = ""


class AdmissibilityReport(BaseModel):
    """Outcome of checking kernel parameters against the convergence theorems."""

    dynamics: Dynamics
    applicable: bool
    checks: List[ConditionCheck] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every checkable condition holds; indeterminate ones are ignored."""
        return all(c.passed is not False for c in self.checks)

    @property
    def failed_checks(self) -> List[ConditionCheck]:
        return [c for c in self.checks if c.passed is False]

    def summary(self) -> str:
        parts = []
        for c in self.checks:
            state = {True: "pass", False: "FAIL", None: "unchecked"}[c.passed]
            parts.append(f"{c.name}={state}")
        prefix = "" if self.applicable else "theory inapplicable (mu=0); "
        return f"{self.dynamics.value}: {prefix}" + ", ".join(parts)


# ---------------------------------------------------------------------------
# grad_oracle
# ---------------------------------------------------------------------------


class GradMemory(ArrayModel):
    """RCAD memory vector g (shape (..., d)) and cumulative per-chain eval count."""

    g: np.ndarray
    evals: int = Field(ge=0)


class FluxResult(ArrayModel):
    """Flux, updated memory and the drawn coordinate(s)."""

    flux: np.ndarray
    memory: GradMemory
    coordinate: Any


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


class OverdampedState(ArrayModel):
    x: np.ndarray


class UnderdampedState(ArrayModel):
    x: np.ndarray
    v: np.ndarray


class UnderdampedMoments(ArrayModel):
    """Mean and isotropic per-coordinate 2x2 covariance of one underdamped transition."""

    mean_x: np.ndarray
    mean_v: np.ndarray
    cov_xx: float
    cov_vv: float
    cov_xv: float

    @property
    def determinant(self) -> float:
        return self.cov_xx * self.cov_vv - self.cov_xv**2

    def covariance(self) -> np.ndarray:
        return np.array([[self.cov_xx, self.cov_xv], [self.cov_xv, self.cov_vv]])


class MomentTrajectory(ArrayModel):
    """
    Exact second-moment trajectory of a linear-Gaussian chain on N(0, I_d).

    ``x2``, ``v2`` and ``w2`` are E|x^m|^2, E|v^m|^2 and E|x^m + v^m|^2 summed over
    coordinates; ``mean_x`` and ``var_x`` are per-coordinate. All have length M + 1.
    """

    kind: SamplerKind
    dim: int
    h: float
    gamma: float
    x2: np.ndarray
    v2: np.ndarray
    w2: np.ndarray
    mean_x: np.ndarray
    var_x: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.x2) - 1


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


class InitialDistribution(BaseModel):
    """Isotropic Gaussian initial law for x (and v in underdamped kinds)."""

    x_mean: float = 0.0
    x_std: float = Field(default=1.0, ge=0)
    v_mean: float = 0.0
    v_std: float = Field(default=1.0, ge=0)


class ChainConfig(ArrayModel):
    """Everything needed to run one chain (or one block of chains) reproducibly."""

    target: TargetModel
    kind: SamplerKind
    params: KernelParams
    steps: int = Field(ge=0)
    seed: int = Field(ge=0)
    initial: InitialDistribution = Field(default_factory=InitialDistribution)
    gradient_mode: GradientMode = GradientMode.FINITE_DIFFERENCE
    thin: Optional[int] = Field(default=None, gt=0)

    @field_validator("gradient_mode")
    @classmethod
    def _exact_needs_partials(cls, mode: GradientMode, info: ValidationInfo) -> GradientMode:
        target = info.data.get("target")
        if mode == GradientMode.EXACT and target is not None and not target.has_exact_partial:
            raise ValueError("exact gradient mode requires a target with exact partials")
        return mode


class ChainOutput(ArrayModel):
    """Final state, optional thinned trajectory and cost of one chain."""

    kind: SamplerKind
    x: np.ndarray
    v: Optional[np.ndarray] = None
    trajectory_x: Optional[np.ndarray] = None
    trajectory_v: Optional[np.ndarray] = None
    memory: Optional[np.ndarray] = None
    evals: int = Field(ge=0)
    diverged: bool = False
    diverged_at: Optional[int] = None
    wall_time_s: float = 0.0
    seed: int


class EnsembleOutput(ArrayModel):
    """
    Stacked results of N chains, in chain order.

    Arrays have a leading chain axis; trajectories are ``(T, N, d)``. ``seeds[i]`` is
    chain i's own seed, so ``run_chain`` with it replays that chain.
    """

    kind: SamplerKind
    master_seed: Optional[int] = None
    block_size: int = Field(ge=1)
    seeds: List[int]
    x: np.ndarray
    v: Optional[np.ndarray] = None
    trajectory_x: Optional[np.ndarray] = None
    trajectory_v: Optional[np.ndarray] = None
    memory: Optional[np.ndarray] = None
    evals: np.ndarray
    diverged: np.ndarray
    diverged_at: np.ndarray
    wall_time_s: float = 0.0

    def __len__(self) -> int:
        return int(self.x.shape[0])

    def __iter__(self) -> Iterator[ChainOutput]:  # type: ignore[override]
        for i in range(len(self)):
            yield self.chain(i)

    @property
    def total_evals(self) -> int:
        return int(np.sum(self.evals, dtype=np.int64))

    @property
    def divergence_fraction(self) -> float:
        return float(np.mean(self.diverged)) if len(self) else 0.0

    def finite_x(self) -> np.ndarray:
        """Final positions of the chains that did not diverge."""
        return self.x[~self.diverged]

    def chain(self, i: int) -> ChainOutput:
        at = int(self.diverged_at[i])
        return ChainOutput(
            kind=self.kind,
            x=self.x[i],
            v=None if self.v is None else self.v[i],
            trajectory_x=None if self.trajectory_x is None else self.trajectory_x[:, i],
            trajectory_v=None if self.trajectory_v is None else self.trajectory_v[:, i],
            memory=None if self.memory is None else self.memory[i],
            evals=int(self.evals[i]),
            diverged=bool(self.diverged[i]),
            diverged_at=None if at < 0 else at,
            wall_time_s=self.wall_time_s,
            seed=self.seeds[i],
        )


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


class MomentErrorReport(BaseModel):
    """|mean of phi over the ensemble - E_p phi| with its Monte Carlo standard error."""

    estimate: float
    reference: float
    error: float
    std_error: float
    n: int


class CounterexampleReport(BaseModel):
    """Stationary E|w|^2 of an underdamped chain on N(0, I_d), measured and exact."""

    kind: SamplerKind
    d: int
    h: float
    steps: int
    chains: int
    oracle_w2: float
    oracle_excess: float
    lower_bound: float
    w2_lower_bound: float
    theorem_w2_bound: float
    stationary: bool
    measured_w2: Optional[float] = None
    std_error: Optional[float] = None
    measured_excess: Optional[float] = None
    agreement: Optional[bool] = None
    divergence_fraction: Optional[float] = None


# ---------------------------------------------------------------------------
# harness_cli
# ---------------------------------------------------------------------------


class TargetSpec(BaseModel):
    """Named target with numeric parameters."""

    name: Literal["gaussian", "mixture"]
    params: Dict[str, float] = Field(default_factory=dict)

    def build(self, dim: int) -> TargetModel:
        return build_target(self.name, dim, **self.params)


class EtaRule(BaseModel):
    """
    Finite-difference step rule.

    ``auto`` picks h/10 for overdamped and h^3/10 for underdamped kinds.
    """

    mode: Literal["auto", "fixed", "h", "h3"] = "auto"
    value: float = Field(default=0.1, gt=0)

    def resolve(self, h: float, dynamics: Dynamics) -> float:
        if self.mode == "fixed":
            return self.value
        if self.mode == "h":
            return self.value * h
        if self.mode == "h3":
            return self.value * h**3
        if dynamics == Dynamics.OVERDAMPED:
            return 0.1 * h
        return 0.1 * h**3

    def describe(self) -> str:
        return self.mode if self.mode == "auto" else f"{self.mode} {self.value!r}"


class StepsRule(BaseModel):
    """Fixed M, or steps until the exact-moment plateau, capped at ``value``."""

    mode: Literal["fixed", "plateau"] = "fixed"
    value: int = Field(ge=0)


class SweepSpec(BaseModel):
    """A validated sampler x stepsize sweep."""

    target: TargetSpec
    samplers: List[SamplerKind] = Field(min_length=1)
    h: List[float] = Field(min_length=1)
    eta: EtaRule = Field(default_factory=EtaRule)
    d: int = Field(ge=1)
    n: int = Field(ge=1)
    steps: StepsRule
    seed: int = Field(default=0, ge=0)
    gamma: Optional[float] = Field(default=None, gt=0)
    initial: InitialDistribution = Field(default_factory=lambda: InitialDistribution(x_mean=0.5))
    gradient_mode: GradientMode = GradientMode.FINITE_DIFFERENCE
    output: Optional[str] = None
    warnings: List[str] = Field(default_factory=list)
    echo: List[str] = Field(default_factory=list)

    def resolve_gamma(self, target: TargetModel) -> float:
        """gamma from the config, else 1/L."""
        return self.gamma if self.gamma is not None else 1.0 / target.lip_grad

    def kernel_params(self, kind: SamplerKind, h: float, target: TargetModel) -> KernelParams:
        return KernelParams(
            h=h, eta=self.eta.resolve(h, kind.dynamics), gamma=self.resolve_gamma(target)
        )


CSV_COLUMNS = (
    "sampler",
    "d",
    "h",
    "eta",
    "M",
    "N",
    "error",
    "std_error",
    "evals",
    "wall_ms",
    "seed",
    "diverged",
)


class SweepRow(BaseModel):
    """One (sampler, h) cell of a sweep."""

    sampler: SamplerKind
    d: int
    h: float
    eta: float
    M: int
    N: int
    error: float
    std_error: float
    evals: int
    wall_ms: float
    seed: int
    status: SweepStatus = SweepStatus.COMPLETED
    divergence_fraction: float = 0.0
    diverged: int = Field(default=0, ge=0)


class SweepResult(BaseModel):
    """Rows in declared (sampler, h) order plus provenance comments."""

    rows: List[SweepRow] = Field(default_factory=list)
    comments: List[str] = Field(default_factory=list)

    @property
    def failed_rows(self) -> List[SweepRow]:
        return [r for r in self.rows if r.status == SweepStatus.FAILED]

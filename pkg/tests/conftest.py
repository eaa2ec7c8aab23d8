"""Shared fixtures."""

import numpy as np
import pytest

from rcad_lmc.core.models import ChainConfig, InitialDistribution, KernelParams
from rcad_lmc.core.targets import GaussianTarget, QuadraticTarget
from rcad_lmc.core.types import GradientMode, SamplerKind


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def standard_gaussian():
    """Factory for N(0, I_d)."""

    def _make(d: int) -> GaussianTarget:
        return GaussianTarget(mean=0.0, dim=d)

    return _make


@pytest.fixture
def random_quadratic(rng):
    """Factory for random quadratic targets with well-conditioned precision."""

    def _make(d: int) -> QuadraticTarget:
        b = rng.standard_normal((d, d)) / np.sqrt(d)
        precision = b @ b.T + 0.5 * np.eye(d)
        return QuadraticTarget(precision=precision, mean=rng.standard_normal(d))

    return _make


@pytest.fixture
def chain_config(standard_gaussian):
    """Factory for chain configurations on N(0, I_d)."""

    def _make(
        kind: SamplerKind,
        d: int = 4,
        h: float = 0.05,
        steps: int = 100,
        seed: int = 1,
        mode: GradientMode = GradientMode.EXACT,
        **kwargs,
    ) -> ChainConfig:
        eta = h / 10.0 if kind.dynamics.value == "overdamped" else h**3 / 10.0
        return ChainConfig(
            target=kwargs.pop("target", standard_gaussian(d)),
            kind=kind,
            params=KernelParams(h=h, eta=eta, gamma=1.0),
            steps=steps,
            seed=seed,
            initial=kwargs.pop("initial", InitialDistribution(x_mean=0.5)),
            gradient_mode=mode,
            **kwargs,
        )

    return _make

"""Tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from rcad_lmc.config import Settings


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in (
        "RCAD_LMC_THREADS",
        "RCAD_LMC_BLOCK_SIZE",
        "RCAD_LMC_LOG_LEVEL",
        "RCAD_LMC_FAILURE_THRESHOLD",
        "RCAD_LMC_PLATEAU_TOLERANCE",
        "RCAD_LMC_PLATEAU_WINDOW",
        "RCAD_LMC_PLATEAU_CAP",
        "RCAD_LMC_RECORD_WALL_TIME",
    ):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    settings = Settings()
    assert settings.get_ensemble_config().threads == 1
    assert settings.get_ensemble_config().block_size == 4096
    assert settings.failure_threshold == 0.5
    plateau = settings.get_plateau_config()
    assert (plateau.tolerance, plateau.window, plateau.cap) == (0.01, 0.1, 200_000)
    assert settings.record_wall_time


def test_environment_overrides(clean_env):
    clean_env.setenv("RCAD_LMC_THREADS", "0")
    clean_env.setenv("RCAD_LMC_BLOCK_SIZE", "128")
    clean_env.setenv("RCAD_LMC_PLATEAU_CAP", "5000")
    clean_env.setenv("RCAD_LMC_RECORD_WALL_TIME", "false")
    settings = Settings()
    assert settings.get_ensemble_config().threads == 0
    assert settings.get_ensemble_config().block_size == 128
    assert settings.get_plateau_config().cap == 5000
    assert not settings.record_wall_time


def test_dotenv_file(clean_env, tmp_path):
    (tmp_path / ".env").write_text("RCAD_LMC_FAILURE_THRESHOLD=0.25\n")
    assert Settings().failure_threshold == 0.25


def test_rejects_out_of_range(clean_env):
    clean_env.setenv("RCAD_LMC_FAILURE_THRESHOLD", "1.5")
    with pytest.raises(ValidationError):
        Settings()

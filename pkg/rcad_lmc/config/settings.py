"""Settings and configuration for the RCAD-LMC harness."""

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class EnsembleConfig(BaseModel):
    """Configuration for ensemble execution."""

    threads: int = Field(default=1, ge=0)  # 0 = one per CPU
    block_size: int = Field(default=4096, ge=1)


class PlateauConfig(BaseModel):
    """Configuration for the stationarity heuristic."""

    tolerance: float = Field(default=0.01, gt=0)
    window: float = Field(default=0.1, gt=0, le=1)
    cap: int = Field(default=200_000, ge=1)


class Settings(BaseSettings):
    """Main settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    # Ensemble execution
    threads: int = Field(default=1, ge=0, alias="RCAD_LMC_THREADS")
    block_size: int = Field(default=4096, ge=1, alias="RCAD_LMC_BLOCK_SIZE")

    # Logging
    log_level: str = Field(default="INFO", alias="RCAD_LMC_LOG_LEVEL")

    # Sweep failure policy
    failure_threshold: float = Field(default=0.5, ge=0, le=1, alias="RCAD_LMC_FAILURE_THRESHOLD")

    # Plateau heuristic
    plateau_tolerance: float = Field(default=0.01, gt=0, alias="RCAD_LMC_PLATEAU_TOLERANCE")
    plateau_window: float = Field(default=0.1, gt=0, le=1, alias="RCAD_LMC_PLATEAU_WINDOW")
    plateau_cap: int = Field(default=200_000, ge=1, alias="RCAD_LMC_PLATEAU_CAP")

    # CSV output
    record_wall_time: bool = Field(default=True, alias="RCAD_LMC_RECORD_WALL_TIME")

    def get_ensemble_config(self) -> EnsembleConfig:
        """Get ensemble execution configuration."""
        return EnsembleConfig(threads=self.threads, block_size=self.block_size)

    def get_plateau_config(self) -> PlateauConfig:
        """Get plateau heuristic configuration."""
        return PlateauConfig(
            tolerance=self.plateau_tolerance,
            window=self.plateau_window,
            cap=self.plateau_cap,
        )


# Global settings instance
settings = Settings()

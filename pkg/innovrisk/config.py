"""
Application configuration using Pydantic Settings.
Loads from environment variables, .env file and an optional key=value config file.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

from dotenv import dotenv_values
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="INNOVRISK_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Simulation
    burn_in: int = 500
    master_seed: int = 20240517
    stationarity_tol: float = 1e-9

    # R-estimation
    score_lambda: float = 0.5
    rfit_method: Literal["pattern", "lp"] = "pattern"
    f_tol: float = 1e-8  # relative: f_tol * (1 + |D|)
    x_tol: float = 1e-6  # relative to the scale of the slope vector
    max_iter: int = 5000
    max_restarts: int = 2
    restart_spread: float = 0.2

    # Risk functionals
    alphas: tuple[float, ...] = (0.95, 0.99)
    center_residuals: bool = False
    flag_level: float = 0.99
    target_mc_size: int = 1_000_000
    target_seed: int = 8675309

    # Benchmark
    replications: int = 1000
    workers: int = 1

    # Ingestion (daily gauge CSV)
    date_column: str = "date"
    value_column: str = "value"
    date_format: str | None = None

    # Output
    out_dir: Path = Path(".")
    output_format: Literal["csv", "json", "text"] = "json"
    log_level: str = "INFO"

    @field_validator("alphas", mode="before")
    @classmethod
    def _split_alphas(cls, value: Any) -> Any:
        # Config files carry lists as "0.95,0.99"; environment variables use JSON lists
        if isinstance(value, str):
            return tuple(float(v) for v in value.split(",") if v.strip())
        return value

    @field_validator("score_lambda", "flag_level")
    @classmethod
    def _open_unit_interval(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("must lie strictly between 0 and 1")
        return value

    @field_validator("alphas")
    @classmethod
    def _levels_in_range(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value:
            raise ValueError("at least one level is required")
        if any(not 0.0 < a < 1.0 for a in value):
            raise ValueError("risk levels must lie strictly between 0 and 1")
        return value


def load_settings(config_path: Path | str | None = None, **overrides: Any) -> Settings:
    """
    Build settings from a flat key=value config file plus explicit overrides.

    Precedence: overrides > config file > environment / .env > defaults.
    Overrides whose value is None are ignored so CLI flags that were not given
    do not mask the config file.
    """
    values: dict[str, Any] = {}
    if config_path is not None:
        known = set(Settings.model_fields)
        for key, raw in dotenv_values(config_path).items():
            name = key.strip().lower()
            if name not in known:
                logger.warning("Ignoring unknown config key '%s' in %s", key, config_path)
                continue
            if raw is not None:
                values[name] = raw
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()

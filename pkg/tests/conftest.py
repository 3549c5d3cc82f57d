"""
Shared test fixtures for the innovrisk test suite.
"""

from pathlib import Path

import numpy as np
import pytest

from innovrisk.config import Settings
from innovrisk.models.series import Series
from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.experiment import InnovationScenario
from innovrisk.services.ar_core import simulate_ar
from innovrisk.services.scenarios import make_sampler

REPO_ROOT = Path(__file__).parent.parent


@pytest.fixture
def test_settings(tmp_path):
    """Settings writing into a temporary directory."""
    return Settings(out_dir=tmp_path, replications=5, log_level="WARNING")


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def ar_series():
    """Factory for seeded simulated AR series: ar_series(phi, n, seed, scenario="normal")."""

    def make(
        phi: tuple[float, ...] = (0.5,),
        n: int = 300,
        seed: int = 1,
        scenario: str = "normal",
    ) -> Series:
        model = ARModel(phi=tuple(phi))
        return simulate_ar(
            model, make_sampler(InnovationScenario.of(scenario)), n, burn_in=200, seed=seed
        )

    return make


@pytest.fixture
def gauge_file() -> Path:
    """Bundled synthetic gauge record: AR(1) phi=0.87 on log(1 + QD), 2021-2024, with gaps."""
    return REPO_ROOT / "data" / "synthetic_gauge.csv"


@pytest.fixture
def write_csv(tmp_path):
    """Write text to a CSV file in tmp_path and return its path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write

"""
Pydantic schemas for the Monte Carlo study: innovation laws, grids and cell results.
"""

from enum import Enum
from typing import Literal

from pydantic import Field, field_validator

from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.base import BaseSchema, JsonFloat


class ScenarioTag(str, Enum):
    NORMAL = "normal"
    T3 = "t3"
    MIXTURE = "mixture"
    CONTAMINATION = "contamination"


# Names used in the published result tables
SCENARIO_DISPLAY = {
    ScenarioTag.NORMAL: "Normal",
    ScenarioTag.T3: "t3",
    ScenarioTag.MIXTURE: "Mixture",
    ScenarioTag.CONTAMINATION: "Contamination",
}


class InnovationScenario(BaseSchema):
    """
    An i.i.d. innovation law.

    normal        N(0, 1)
    t3            t_df scaled to unit variance, i.e. by sqrt((df - 2) / df)
    mixture       (1 - w) N(0, 1) + w N(0, s^2), w = 0.1, s = 3
    contamination (1 - eps) N(0, 1) + eps N(0, s_c^2), eps = 0.01, s_c = 10
    """

    tag: ScenarioTag
    t_df: float = Field(default=3.0, gt=2.0)
    mixture_weight: float = Field(default=0.1, ge=0.0, le=1.0)
    mixture_scale: float = Field(default=3.0, gt=0.0)
    contamination_eps: float = Field(default=0.01, ge=0.0, le=1.0)
    contamination_scale: float = Field(default=10.0, gt=0.0)

    @property
    def display_name(self) -> str:
        return SCENARIO_DISPLAY[self.tag]

    @classmethod
    def of(cls, tag: str | ScenarioTag) -> "InnovationScenario":
        return cls(tag=ScenarioTag(str(tag).lower()))


def standard_models() -> tuple[ARModel, ...]:
    return (
        ARModel(phi=(0.5,)),
        ARModel(phi=(0.8,)),
        ARModel(phi=(0.5, -0.2)),
    )


class ExperimentGrid(BaseSchema):
    """Full factorial design: models x scenarios x sizes x alphas, R replications each."""

    models: tuple[ARModel, ...] = Field(default_factory=standard_models, min_length=1)
    scenarios: tuple[InnovationScenario, ...] = Field(
        default_factory=lambda: tuple(InnovationScenario(tag=t) for t in ScenarioTag),
        min_length=1,
    )
    sizes: tuple[int, ...] = Field(default=(100, 200, 500), min_length=1)
    alphas: tuple[float, ...] = Field(default=(0.95, 0.99), min_length=1)
    replications: int = Field(default=1000, ge=1)
    master_seed: int = 20240517
    burn_in: int = Field(default=500, ge=0)
    score_lambda: float = Field(default=0.5, gt=0.0, lt=1.0)
    method: Literal["r", "arq"] = "r"
    target_mc_size: int = 1_000_000
    target_seed: int = 8675309

    @field_validator("alphas")
    @classmethod
    def _levels(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(not 0.0 < a < 1.0 for a in value):
            raise ValueError("alphas must lie in (0, 1)")
        return value

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 2 for n in value):
            raise ValueError("sample sizes must be at least 2")
        return value

    @property
    def cell_count(self) -> int:
        return len(self.models) * len(self.scenarios) * len(self.sizes) * len(self.alphas)


def _rng_algorithm() -> str:
    from innovrisk.services.rng import RNG_ALGORITHM

    return RNG_ALGORITHM


class CellResult(BaseSchema):
    """Bias and RMSE of the feasible (R-fit) and oracle CVaR estimators in one cell."""

    model: ARModel
    scenario: ScenarioTag
    n: int
    alpha: float
    bias_r: JsonFloat
    rmse_r: JsonFloat
    bias_oracle: JsonFloat
    rmse_oracle: JsonFloat
    se_bias_r: JsonFloat = float("nan")
    target: JsonFloat
    target_se: JsonFloat = 0.0
    replications_used: int
    failures: int
    error: str | None = None
    rng: str = Field(default_factory=_rng_algorithm)

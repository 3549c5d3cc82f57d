"""
Pydantic schemas for daily gauge records and the real-data analysis report.
"""

from importlib import resources
from typing import Any

import orjson
from pydantic import Field

from innovrisk.schemas.base import BaseSchema, DateSimple

REPORT_SCHEMA_VERSION = "1.0"
REPORT_SCHEMA_FILE = "analysis_report.v1.schema.json"


class DailyRecord(BaseSchema):
    """One calendar day of a gauge file; value None marks a missing observation."""

    date: DateSimple
    value: float | None = None

    @property
    def is_missing(self) -> bool:
        return self.value is None


class LevelRisk(BaseSchema):
    alpha: float
    var_hat: float
    cvar_hat: float


class AnalysisReport(BaseSchema):
    """Slope estimate and raw-residual tail risk of a transformed gauge series."""

    schema_version: str = REPORT_SCHEMA_VERSION
    gauge: str
    period_start: DateSimple
    period_end: DateSimple
    p: int
    n_eff: int
    phi_hat: tuple[float, ...]
    lambda_: float = Field(alias="lambda")
    levels: tuple[LevelRisk, ...]
    flag_level: float
    flag_var: float
    exceedance_dates: tuple[DateSimple, ...]
    exceedance_residuals: tuple[float, ...]
    segments_used: int
    missing_values: int

    def level(self, alpha: float) -> LevelRisk:
        for entry in self.levels:
            if abs(entry.alpha - alpha) < 1e-12:
                return entry
        raise KeyError(alpha)


def load_report_schema() -> dict[str, Any]:
    """JSON schema shipped with the package for AnalysisReport payloads."""
    text = resources.files("innovrisk.resources").joinpath(REPORT_SCHEMA_FILE).read_bytes()
    return orjson.loads(text)

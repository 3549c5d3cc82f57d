"""
Pydantic schemas for configuration-free domain types and reports.
"""

from innovrisk.schemas.ar import ARModel, StationarityVerdict
from innovrisk.schemas.estimation import ARQuantile, RFit, SolverOptions, SolverTrace
from innovrisk.schemas.experiment import (
    CellResult,
    ExperimentGrid,
    InnovationScenario,
    ScenarioTag,
)
from innovrisk.schemas.report import AnalysisReport, DailyRecord, LevelRisk
from innovrisk.schemas.risk import CVaRTarget, RiskMethod, RiskReport, TargetMethod

__all__ = [
    "ARModel",
    "ARQuantile",
    "AnalysisReport",
    "CVaRTarget",
    "CellResult",
    "DailyRecord",
    "ExperimentGrid",
    "InnovationScenario",
    "LevelRisk",
    "RFit",
    "RiskMethod",
    "RiskReport",
    "ScenarioTag",
    "SolverOptions",
    "SolverTrace",
    "StationarityVerdict",
    "TargetMethod",
]

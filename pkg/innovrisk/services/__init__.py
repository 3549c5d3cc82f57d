"""
Services package for the numerics and I/O.
"""

from innovrisk.services.analysis import analyze
from innovrisk.services.ar_core import (
    build_lagged_design,
    check_stationary,
    design_covariance,
    residuals,
    simulate_ar,
)
from innovrisk.services.ar_quantile import check_loss, fit_ar_quantile
from innovrisk.services.harness import run_cell, run_grid
from innovrisk.services.ingest import parse_daily_csv, transform_log1p
from innovrisk.services.rank_estimator import (
    fit_r_estimator,
    jaeckel_dispersion,
    ranks,
    residual_location_quantile,
)
from innovrisk.services.risk import (
    cvar_min_form,
    cvar_tail_average,
    cvar_target,
    estimate_innovation_risk,
    var_hat,
)
from innovrisk.services.scenarios import sample_innovations

__all__ = [
    "analyze",
    "build_lagged_design",
    "check_loss",
    "check_stationary",
    "cvar_min_form",
    "cvar_tail_average",
    "cvar_target",
    "design_covariance",
    "estimate_innovation_risk",
    "fit_ar_quantile",
    "fit_r_estimator",
    "jaeckel_dispersion",
    "parse_daily_csv",
    "ranks",
    "residual_location_quantile",
    "residuals",
    "run_cell",
    "run_grid",
    "sample_innovations",
    "simulate_ar",
    "transform_log1p",
    "var_hat",
]

"""
Real-data workflow: R-fit of an AR(p) model on a transformed gauge record,
raw-residual tail risk and VaR exceedance dates.
"""

import logging
from collections.abc import Sequence

import numpy as np

from innovrisk.exceptions import InsufficientDataError
from innovrisk.models.score import StepScore
from innovrisk.models.series import LaggedDesign
from innovrisk.schemas.estimation import SolverOptions
from innovrisk.schemas.report import AnalysisReport, DailyRecord, LevelRisk
from innovrisk.services.ar_core import build_lagged_design, residuals
from innovrisk.services.ingest import missing_count, transform_log1p
from innovrisk.services.order_stats import check_level
from innovrisk.services.rank_estimator import fit_r_estimator
from innovrisk.services.risk import cvar_min_form, var_hat

logger = logging.getLogger(__name__)

# Rows beyond p required in the longest segment
MIN_SEGMENT_EXTRA = 30


def analyze(
    records: Sequence[DailyRecord],
    p: int = 1,
    score_lambda: float = 0.5,
    alphas: Sequence[float] = (0.95, 0.99),
    flag_level: float = 0.99,
    label: str = "gauge",
    options: SolverOptions | None = None,
    center: bool = False,
) -> AnalysisReport:
    """
    Pool the lagged rows of every usable segment, fit once, and evaluate
    VaR/CVaR of the raw residuals.

    Exceedances are the response dates whose residual is strictly above the
    VaR at `flag_level`.
    """
    check_level(flag_level)
    for alpha in alphas:
        check_level(alpha)
    if not records:
        raise InsufficientDataError("no daily records to analyze")

    segments = transform_log1p(records, label=label)
    longest = max((len(s) for s in segments), default=0)
    if longest <= p + MIN_SEGMENT_EXTRA:
        raise InsufficientDataError(
            f"longest gap-free segment has {longest} values; need more than {p + MIN_SEGMENT_EXTRA}"
        )

    designs = [build_lagged_design(s, p) for s in segments if len(s) > p]
    design = LaggedDesign.pooled(designs)
    fit = fit_r_estimator(design, StepScore(score_lambda), options)
    resid = residuals(design, fit.slopes)
    if center:
        resid = resid - resid.mean()

    levels = []
    for alpha in alphas:
        report = cvar_min_form(resid, alpha)
        levels.append(LevelRisk(alpha=alpha, var_hat=report.var_hat, cvar_hat=report.cvar_hat))

    flag_var = var_hat(resid, flag_level)
    flagged = np.flatnonzero(resid > flag_var)
    dates = design.response_dates or ()
    logger.info(
        "%s: n_eff=%d over %d segment(s), phi_hat=%s, %d exceedance(s) of VaR_%g",
        label,
        design.n_eff,
        len(designs),
        fit.slopes,
        flagged.size,
        flag_level,
    )
    return AnalysisReport(
        gauge=label,
        period_start=records[0].date,
        period_end=records[-1].date,
        p=p,
        n_eff=design.n_eff,
        phi_hat=fit.slopes,
        lambda_=score_lambda,
        levels=tuple(levels),
        flag_level=flag_level,
        flag_var=flag_var,
        exceedance_dates=tuple(dates[i] for i in flagged),
        exceedance_residuals=tuple(float(resid[i]) for i in flagged),
        segments_used=len(designs),
        missing_values=missing_count(records),
    )

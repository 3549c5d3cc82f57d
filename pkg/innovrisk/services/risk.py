"""
Tail-risk functionals of a residual (or raw) sample.

VaR is the k-th order statistic with k = max(1, floor(n * alpha)). CVaR uses
the minimization representation

    CVaR_alpha = floor(n (1 - alpha))^-1 min_xi sum_t rho_alpha(z_t - xi) + mean(z)

whose objective is piecewise linear with breakpoints at the sample values, so
the minimum is found by a sorted prefix-sum sweep over those values.
"""

import logging
from collections.abc import Sequence
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy.stats import norm

from innovrisk.exceptions import (
    EmptyTailError,
    RankDeficientError,
    SeriesTooShortError,
    TailTooThinError,
    ValidationError,
)
from innovrisk.models.score import StepScore
from innovrisk.models.series import Series
from innovrisk.schemas.estimation import SolverOptions
from innovrisk.schemas.experiment import InnovationScenario, ScenarioTag
from innovrisk.schemas.risk import CVaRTarget, RiskMethod, RiskReport, TargetMethod
from innovrisk.services.ar_core import build_lagged_design, residuals
from innovrisk.services.ar_quantile import fit_ar_quantile
from innovrisk.services.order_stats import (
    as_sample,
    check_level,
    kth_smallest,
    order_index,
    safe_floor,
)
from innovrisk.services.rank_estimator import fit_r_estimator
from innovrisk.services.scenarios import sample_innovations

logger = logging.getLogger(__name__)

MIN_TARGET_MC_SIZE = 1_000_000
DEFAULT_TARGET_SEED = 8675309
# Extra rows beyond p that estimate_innovation_risk insists on
MIN_EXTRA_ROWS = 10

_TIE_TOL = 1e-12


def var_hat(sample: np.ndarray | Sequence[float], alpha: float) -> float:
    """Empirical VaR: the k-th smallest value, k = max(1, floor(n * alpha))."""
    check_level(alpha)
    z = as_sample(sample)
    return kth_smallest(z, order_index(z.size, alpha))


def tail_count(n: int, alpha: float) -> int:
    """floor(n (1 - alpha)); raises TailTooThinError when it is zero."""
    k = safe_floor(n * (1.0 - alpha))
    if k < 1:
        raise TailTooThinError(n=n, alpha=alpha)
    return k


def cvar_min_form(sample: np.ndarray | Sequence[float], alpha: float) -> RiskReport:
    """
    CVaR through the check-loss minimization.

    xi_star is the smallest sample value attaining the minimum. The sweep runs
    on the demeaned sample so large location shifts do not cost precision.
    """
    check_level(alpha)
    z = as_sample(sample)
    n = z.size
    k = tail_count(n, alpha)

    mean = float(z.mean())
    ordered = np.sort(z)
    d = ordered - mean
    csum = np.cumsum(d)
    total = csum[-1]
    j = np.arange(n)
    above = (total - csum) - (n - j - 1) * d
    below = (j + 1) * d - csum
    objective = alpha * above + (1.0 - alpha) * below

    best = float(objective.min())
    idx = int(np.flatnonzero(objective <= best + _TIE_TOL * (1.0 + abs(best)))[0])
    best = max(best, 0.0)

    return RiskReport(
        alpha=alpha,
        var_hat=kth_smallest(z, order_index(n, alpha)),
        cvar_hat=best / k + mean,
        n_eff=n,
        method=RiskMethod.MINIMIZATION,
        xi_star=float(ordered[idx]),
    )


def cvar_tail_average(sample: np.ndarray | Sequence[float], alpha: float) -> float:
    """Mean of the values strictly above var_hat(sample, alpha)."""
    check_level(alpha)
    z = as_sample(sample)
    threshold = kth_smallest(z, order_index(z.size, alpha))
    tail = z[z > threshold]
    if tail.size == 0:
        raise EmptyTailError(alpha)
    return float(tail.mean())


def tail_average_report(sample: np.ndarray | Sequence[float], alpha: float) -> RiskReport:
    z = as_sample(sample)
    threshold = var_hat(z, alpha)
    return RiskReport(
        alpha=alpha,
        var_hat=threshold,
        cvar_hat=cvar_tail_average(z, alpha),
        n_eff=z.size,
        method=RiskMethod.TAIL_AVERAGE,
        xi_star=threshold,
    )


def risk_reports(
    sample: np.ndarray | Sequence[float],
    alphas: Sequence[float],
    method: RiskMethod | str = RiskMethod.MINIMIZATION,
    slopes: Sequence[float] | None = None,
) -> list[RiskReport]:
    """One report per level, optionally stamped with the slopes that produced the sample."""
    method = RiskMethod(method)
    compute = cvar_min_form if method is RiskMethod.MINIMIZATION else tail_average_report
    stamp = tuple(float(s) for s in slopes) if slopes is not None else None
    reports = []
    for alpha in alphas:
        report = compute(sample, alpha)
        if stamp is not None:
            report = report.model_copy(update={"slopes": stamp})
        reports.append(report)
    return reports


@lru_cache(maxsize=128)
def _cached_target(
    scenario: InnovationScenario, alpha: float, mc_size: int, seed: int, force_mc: bool
) -> CVaRTarget:
    if scenario.tag is ScenarioTag.NORMAL and not force_mc:
        value = float(norm.pdf(norm.ppf(alpha)) / (1.0 - alpha))
        return CVaRTarget(value=value, method=TargetMethod.ANALYTIC)

    draws = sample_innovations(scenario, mc_size, seed)
    threshold = kth_smallest(draws, order_index(draws.size, alpha))
    tail = draws[draws > threshold]
    if tail.size < 2:
        raise EmptyTailError(alpha)
    value = float(tail.mean())
    std_error = float(tail.std(ddof=1) / np.sqrt(tail.size))
    logger.info(
        "MC target %s alpha=%.3f: %.5f (se %.2g, %d draws)",
        scenario.display_name,
        alpha,
        value,
        std_error,
        mc_size,
    )
    return CVaRTarget(
        value=value,
        std_error=std_error,
        method=TargetMethod.MONTE_CARLO,
        mc_size=mc_size,
        seed=seed,
    )


def cvar_target(
    scenario: InnovationScenario,
    alpha: float,
    mc_size: int = MIN_TARGET_MC_SIZE,
    seed: int = DEFAULT_TARGET_SEED,
    method: Literal["auto", "monte_carlo"] = "auto",
) -> CVaRTarget:
    """
    True CVaR of an innovation law.

    The Gaussian law is evaluated analytically as pdf(ppf(alpha)) / (1 - alpha)
    unless method="monte_carlo"; every other law is a tail average over
    mc_size i.i.d. draws. Results are cached per (scenario, alpha, mc_size, seed).
    """
    check_level(alpha)
    if method not in ("auto", "monte_carlo"):
        raise ValidationError(f"unknown target method '{method}'")
    force_mc = method == "monte_carlo"
    needs_mc = force_mc or scenario.tag is not ScenarioTag.NORMAL
    if needs_mc and mc_size < MIN_TARGET_MC_SIZE:
        raise ValidationError(
            f"Monte Carlo targets need at least {MIN_TARGET_MC_SIZE} draws, got {mc_size}"
        )
    return _cached_target(scenario, float(alpha), int(mc_size), int(seed), force_mc)


def fit_slopes(
    series: Series,
    p: int,
    score_lambda: float = 0.5,
    method: Literal["r", "arq"] = "r",
    options: SolverOptions | None = None,
) -> tuple[float, ...]:
    """
    Slope estimate used by the risk pipeline.

    "r" is the R-fit; "arq" takes the slopes of the median autoregression
    quantile. A constant series has no identified slopes and yields zeros.
    """
    if method not in ("r", "arq"):
        raise ValidationError(f"unknown slope method '{method}'")
    try:
        if method == "r":
            design = build_lagged_design(series, p)
            return fit_r_estimator(design, StepScore(score_lambda), options).slopes
        design = build_lagged_design(series, p, with_intercept=True)
        return fit_ar_quantile(design, 0.5, options).slopes
    except RankDeficientError:
        if np.ptp(series.values) != 0.0:
            raise
        suffix = f" '{series.label}'" if series.label else ""
        logger.warning("Series%s is constant; using zero slopes", suffix)
        return (0.0,) * p


def estimate_innovation_risk(
    series: Series,
    p: int,
    alphas: Sequence[float],
    score_lambda: float = 0.5,
    method: Literal["r", "arq"] = "r",
    options: SolverOptions | None = None,
    center: bool = False,
) -> list[RiskReport]:
    """
    Feasible VaR/CVaR of the innovations: slope fit, raw residuals, then
    cvar_min_form per level.

    With `center` the residuals are demeaned before the risk functionals.
    """
    if p < 1:
        raise ValidationError(f"AR order must be at least 1, got {p}")
    if len(series) <= p + MIN_EXTRA_ROWS:
        raise SeriesTooShortError(required=p + MIN_EXTRA_ROWS + 1, actual=len(series))
    for alpha in alphas:
        check_level(alpha)

    slopes = fit_slopes(series, p, score_lambda, method, options)
    resid = residuals(build_lagged_design(series, p), slopes)
    if center:
        resid = resid - resid.mean()
    reports = risk_reports(resid, alphas, RiskMethod.MINIMIZATION, slopes)
    logger.debug(
        "innovation risk p=%d slopes=%s cvar=%s",
        p,
        slopes,
        [round(r.cvar_hat, 6) for r in reports],
    )
    return reports

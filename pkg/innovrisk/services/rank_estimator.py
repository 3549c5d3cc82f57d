"""
Rank-based R-estimation of AR slopes.

The estimator minimizes Jaeckel's dispersion of rank residuals

    D_n(b) = sum_t r_t(b) * [J(R_t(b) / (n + 1)) - J-bar],   r_t(b) = X_t - b'Y_{t-1}

which is convex, piecewise linear and invariant to a location shift of the
residuals. Two solvers are available:

  pattern  derivative-free descent: Nelder-Mead from the least-squares slopes,
           then coordinate search with shrinking steps, restarted from
           +/- restart_spread perturbations of the start; the best point wins.
  lp       exact: for the step score J_lambda,
           D_n(b) = min_xi sum_t rho_tau(r_t(b) - xi) with tau = m / n and
           m = #{i : i / (n + 1) < lambda}, so the slopes of the tau
           autoregression quantile minimize D_n.
"""

import logging

import numpy as np
from scipy.optimize import minimize
from scipy.stats import rankdata

from innovrisk.exceptions import (
    ConvergenceError,
    InsufficientDataError,
    NonFiniteError,
    RankDeficientError,
    ValidationError,
)
from innovrisk.models.score import ScoreFn, StepScore
from innovrisk.models.series import LaggedDesign
from innovrisk.schemas.estimation import RFit, SolverOptions, SolverTrace
from innovrisk.services.ar_core import residuals
from innovrisk.services.ar_quantile import fit_ar_quantile
from innovrisk.services.order_stats import as_sample, check_level, kth_smallest, order_index

logger = logging.getLogger(__name__)


def ranks(values: np.ndarray | list[float]) -> np.ndarray:
    """Ranks 1..n; ties are broken by original position."""
    sample = np.asarray(values, dtype=float).reshape(-1)
    if sample.size == 0:
        raise ValidationError("cannot rank an empty vector")
    bad = np.flatnonzero(~np.isfinite(sample))
    if bad.size:
        raise NonFiniteError("rank input", int(bad[0]))
    return rankdata(sample, method="ordinal").astype(np.int64)


def dispersion_of_residuals(resid: np.ndarray, score: ScoreFn) -> float:
    """
    Jaeckel dispersion of a residual vector.

    Pairing each residual with the centered score of its rank is the same as
    pairing the sorted residuals with the centered scores in rank order.
    """
    r = np.asarray(resid, dtype=float)
    return float(np.dot(np.sort(r), score.centered_scores(r.size)))


def jaeckel_dispersion(design: LaggedDesign, b: np.ndarray | list[float], score: ScoreFn) -> float:
    """D_n(b) over the usable rows of a design without intercept."""
    if design.with_intercept:
        raise ValidationError("Jaeckel dispersion is defined on designs without intercept column")
    return dispersion_of_residuals(residuals(design, b), score)


def _centered(design: LaggedDesign) -> LaggedDesign:
    # D_n is location invariant; centering keeps X and X + c numerically identical
    return LaggedDesign(
        responses=design.responses - design.responses.mean(),
        lags=design.lags - design.lags.mean(axis=0),
    )


def _least_squares_start(design: LaggedDesign) -> np.ndarray:
    solution, *_ = np.linalg.lstsq(design.lags, design.responses, rcond=None)
    return solution


def _restart_points(start: np.ndarray, spread: float, count: int) -> list[np.ndarray]:
    points = [start]
    for i in range(count):
        sign = 1.0 if i % 2 == 0 else -1.0
        factor = spread * (1 + i // 2)
        step = np.where(start != 0.0, np.abs(start) * factor, factor)
        points.append(start + sign * step)
    return points


def _coordinate_search(f, x0: np.ndarray, fx0: float, step: float, min_step: float, budget: int):
    """Shrinking-step coordinate descent; returns (x, f(x), evaluations)."""
    x, fx, evals = x0.copy(), fx0, 0
    while step >= min_step and evals < budget:
        improved = True
        while improved and evals < budget:
            improved = False
            for j in range(x.size):
                for direction in (1.0, -1.0):
                    trial = x.copy()
                    trial[j] += direction * step
                    ft = f(trial)
                    evals += 1
                    if ft < fx:
                        x, fx, improved = trial, ft, True
                        break
        step /= 2.0
    return x, fx, evals


def _subgradient_gap(f, x: np.ndarray, fx: float, x_tol: float) -> float:
    """Largest decrease any coordinate move of size x_tol achieves (0 when none does)."""
    gap = 0.0
    for j in range(x.size):
        for direction in (1.0, -1.0):
            trial = x.copy()
            trial[j] += direction * x_tol
            gap = max(gap, fx - f(trial))
    return gap


def _check_design(design: LaggedDesign) -> None:
    if design.with_intercept:
        raise ValidationError("the R-fit estimates slopes only; build the design without intercept")
    if design.p < 1:
        raise ValidationError("the R-fit needs at least one lag")
    if design.n_eff <= design.p:
        raise InsufficientDataError(
            f"R-fit needs more than {design.p} rows, got {design.n_eff}"
        )
    constant = [j + 1 for j in range(design.p) if np.ptp(design.lags[:, j]) == 0.0]
    if constant:
        raise RankDeficientError(
            f"lag column(s) {constant} are constant; slopes are not identified"
        )
    if np.linalg.matrix_rank(design.lags - design.lags.mean(axis=0)) < design.p:
        raise RankDeficientError("lag columns are collinear; slopes are not identified")


def _fit_pattern(design: LaggedDesign, score: ScoreFn, opts: SolverOptions):
    def f(b: np.ndarray) -> float:
        return jaeckel_dispersion(design, b, score)

    start = _least_squares_start(design)
    f_start = f(start)
    scale = max(1.0, float(np.max(np.abs(start))))
    x_tol = opts.x_tol * scale

    def descend(x0: np.ndarray, step: float) -> tuple[np.ndarray, float, int]:
        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options={"xatol": x_tol, "fatol": opts.f_tol, "maxfev": max(opts.max_iter - evals, 1)},
        )
        x, fx = np.atleast_1d(res.x).astype(float), float(res.fun)
        # final step lies below x_tol, so no x_tol move from the result can descend
        x, fx, used = _coordinate_search(
            f, x, fx, step, x_tol / 2.0, max(opts.max_iter - evals - int(res.nfev), 1)
        )
        return x, fx, int(res.nfev) + used

    best_x, best_f, evals = start, f_start, 1
    starts = _restart_points(start, opts.restart_spread, opts.max_restarts)
    for x0 in starts:
        x, fx, used = descend(x0, 0.1 * scale)
        evals += used
        if fx < best_f:
            best_x, best_f = x, fx

    # a fresh simplex at the incumbent escapes kinks that stall coordinate moves
    x, fx, used = descend(best_x, 1e3 * x_tol)
    evals += used
    if fx < best_f:
        best_x, best_f = x, fx

    gap = _subgradient_gap(f, best_x, best_f, x_tol)
    f_tol = opts.f_tol * (1.0 + abs(best_f))
    if gap > f_tol:
        raise ConvergenceError(
            f"R-fit not certified after {len(starts)} starts: "
            f"coordinate gap {gap:.3g} > {f_tol:.3g}",
            best_point=tuple(best_x),
            best_value=best_f,
        )
    trace = SolverTrace(
        method="pattern", iterations=evals, restarts=len(starts) - 1, subgradient_gap=gap
    )
    return best_x, best_f, f_start, trace


def _fit_lp(design: LaggedDesign, score: ScoreFn, opts: SolverOptions):
    if not isinstance(score, StepScore):
        raise ValidationError("the exact LP path is available for the step score only")
    n = design.n_eff
    m = score.lower_count(n)
    start = _least_squares_start(design)
    f_start = jaeckel_dispersion(design, start, score)
    if m == 0 or m == n:
        # all ranks share one centered score of zero: D_n vanishes everywhere
        trace = SolverTrace(method="lp", iterations=0, restarts=0, subgradient_gap=0.0)
        return start, 0.0, f_start, trace

    with_intercept = LaggedDesign(
        responses=design.responses, lags=design.lags, with_intercept=True
    )
    quantile = fit_ar_quantile(with_intercept, m / n, opts)
    slopes = np.asarray(quantile.slopes)
    value = jaeckel_dispersion(design, slopes, score)
    trace = SolverTrace(method="lp", iterations=1, restarts=0, subgradient_gap=0.0)
    return slopes, value, f_start, trace


def fit_r_estimator(
    design: LaggedDesign, score: ScoreFn | None = None, options: SolverOptions | None = None
) -> RFit:
    """R-estimate of the AR slopes (minimizer of the Jaeckel dispersion)."""
    score = score if score is not None else StepScore(0.5)
    opts = options or SolverOptions()
    _check_design(design)
    centered = _centered(design)

    if opts.method == "lp":
        slopes, value, f_start, trace = _fit_lp(centered, score, opts)
    else:
        slopes, value, f_start, trace = _fit_pattern(centered, score, opts)

    lam = float(getattr(score, "lam", float("nan")))
    logger.debug(
        "R-fit (%s) n_eff=%d slopes=%s D=%.6g after %d evaluations",
        trace.method,
        design.n_eff,
        slopes,
        value,
        trace.iterations,
    )
    return RFit(
        slopes=tuple(float(s) for s in slopes),
        dispersion_at_min=float(value),
        dispersion_at_start=float(f_start),
        solver_trace=trace,
        lambda_=lam,
        n_eff=design.n_eff,
    )


def residual_location_quantile(design: LaggedDesign, fit: RFit, alpha: float) -> float:
    """
    k-th smallest residual X_t - Y_{t-1}' phi-tilde with k = max(1, floor(n_eff * alpha)).

    When n_eff * alpha is an integer this is the left end of the argmin set of
    sum_t rho_alpha(residual_t - b).
    """
    check_level(alpha)
    resid = as_sample(residuals(design, fit.slopes), "residuals")
    return kth_smallest(resid, order_index(resid.size, alpha))

"""
Monte Carlo study of the feasible (R-fit) CVaR estimator against the oracle
that knows the true AR slopes.

A cell is (model, scenario, n, alpha). n counts residuals, so every
replication simulates n + p observations. Innovation seeds depend on
(master_seed, scenario, n, replication) only: models and levels that share
those see the same innovations, and no cell depends on the order in which
cells run.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from innovrisk.exceptions import CellAbortedError, DataError, NumericalError, TailTooThinError
from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.estimation import SolverOptions
from innovrisk.schemas.experiment import CellResult, ExperimentGrid, InnovationScenario
from innovrisk.schemas.risk import CVaRTarget
from innovrisk.services.ar_core import DEFAULT_BURN_IN, build_lagged_design, residuals, simulate_ar
from innovrisk.services.order_stats import check_level
from innovrisk.services.risk import (
    DEFAULT_TARGET_SEED,
    MIN_TARGET_MC_SIZE,
    cvar_min_form,
    cvar_target,
    estimate_innovation_risk,
    tail_count,
)
from innovrisk.services.rng import derive_seed
from innovrisk.services.scenarios import make_sampler

logger = logging.getLogger(__name__)

# A cell is aborted when more than this share of its replications fail
MAX_FAILURE_SHARE = 0.01


def replication_seed(
    master_seed: int, scenario: InnovationScenario, n: int, replication: int
) -> np.random.SeedSequence:
    return derive_seed(master_seed, "innovations", scenario.tag.value, n, replication)


@dataclass(frozen=True)
class _Block:
    """All levels of one (model, scenario, n): fitted once per replication."""

    model: ARModel
    scenario: InnovationScenario
    n: int
    alphas: tuple[float, ...]
    targets: tuple[CVaRTarget, ...]
    replications: int
    master_seed: int
    burn_in: int
    score_lambda: float
    method: str
    options: SolverOptions | None


def bias_rmse(estimates: np.ndarray, target: float) -> tuple[float, float]:
    """Empirical bias and root mean squared error, summed in replication order."""
    err = np.asarray(estimates, dtype=float) - target
    return float(np.mean(err)), float(np.sqrt(np.mean(err**2)))


def _aborted(
    block: _Block, alpha: float, target: CVaRTarget, failures: int, reason: str
) -> CellResult:
    nan = float("nan")
    return CellResult(
        model=block.model,
        scenario=block.scenario.tag,
        n=block.n,
        alpha=alpha,
        bias_r=nan,
        rmse_r=nan,
        bias_oracle=nan,
        rmse_oracle=nan,
        target=target.value,
        target_se=target.std_error,
        replications_used=block.replications - failures,
        failures=failures,
        error=reason,
    )


def _run_block(block: _Block) -> list[CellResult]:
    p = block.model.p
    sampler = make_sampler(block.scenario)
    reps = block.replications

    # levels whose tail is empty at this n fail in every replication
    live: list[int] = []
    for i, alpha in enumerate(block.alphas):
        try:
            tail_count(block.n, alpha)
            live.append(i)
        except TailTooThinError:
            pass
    live_alphas = [block.alphas[i] for i in live]

    feasible = np.full((reps, len(block.alphas)), np.nan)
    oracle = np.full((reps, len(block.alphas)), np.nan)
    # a data error (series too short for the fit) repeats in every replication
    block_error: str | None = None
    for rep in range(reps if live else 0):
        seed = replication_seed(block.master_seed, block.scenario, block.n, rep)
        series = simulate_ar(block.model, sampler, block.n + p, burn_in=block.burn_in, seed=seed)
        try:
            reports = estimate_innovation_risk(
                series,
                p,
                live_alphas,
                score_lambda=block.score_lambda,
                method=block.method,  # type: ignore[arg-type]
                options=block.options,
            )
        except DataError as exc:
            block_error = str(exc)
            break
        except NumericalError as exc:
            logger.debug("replication %d failed: %s", rep, exc)
            continue
        true_resid = residuals(build_lagged_design(series, p), block.model.phi)
        for col, report in zip(live, reports, strict=True):
            feasible[rep, col] = report.cvar_hat
            oracle[rep, col] = cvar_min_form(true_resid, block.alphas[col]).cvar_hat

    results = []
    for col, (alpha, target) in enumerate(zip(block.alphas, block.targets, strict=True)):
        ok = ~np.isnan(feasible[:, col])
        failures = int(reps - ok.sum())
        if col not in live:
            results.append(
                _aborted(block, alpha, target, failures, str(TailTooThinError(block.n, alpha)))
            )
            continue
        if block_error is not None:
            results.append(_aborted(block, alpha, target, reps, block_error))
            continue
        if failures > MAX_FAILURE_SHARE * reps:
            reason = f"{failures} of {reps} replications failed"
            results.append(_aborted(block, alpha, target, failures, reason))
            continue
        used = reps - failures
        bias_r, rmse_r = bias_rmse(feasible[ok, col], target.value)
        bias_o, rmse_o = bias_rmse(oracle[ok, col], target.value)
        se_bias = (
            float(np.std(feasible[ok, col], ddof=1) / np.sqrt(used)) if used > 1 else float("nan")
        )
        results.append(
            CellResult(
                model=block.model,
                scenario=block.scenario.tag,
                n=block.n,
                alpha=alpha,
                bias_r=bias_r,
                rmse_r=rmse_r,
                bias_oracle=bias_o,
                rmse_oracle=rmse_o,
                se_bias_r=se_bias,
                target=target.value,
                target_se=target.std_error,
                replications_used=used,
                failures=failures,
            )
        )
    logger.info(
        "cell block %s / %s / n=%d done (%d replications)",
        block.model.label,
        block.scenario.display_name,
        block.n,
        reps,
    )
    return results


def run_cell(
    model: ARModel,
    scenario: InnovationScenario,
    n: int,
    alpha: float,
    replications: int,
    master_seed: int,
    burn_in: int = DEFAULT_BURN_IN,
    score_lambda: float = 0.5,
    method: str = "r",
    target_mc_size: int = MIN_TARGET_MC_SIZE,
    target_seed: int = DEFAULT_TARGET_SEED,
    options: SolverOptions | None = None,
) -> CellResult:
    """
    Bias and RMSE of the feasible and oracle CVaR estimators in one cell.

    Raises CellAbortedError when more than 1% of the replications fail.
    """
    check_level(alpha)
    grid = ExperimentGrid(
        models=(model,),
        scenarios=(scenario,),
        sizes=(n,),
        alphas=(alpha,),
        replications=replications,
        master_seed=master_seed,
        burn_in=burn_in,
        score_lambda=score_lambda,
        method=method,  # type: ignore[arg-type]
        target_mc_size=target_mc_size,
        target_seed=target_seed,
    )
    (result,) = run_grid(grid, options=options)
    if result.error is not None:
        raise CellAbortedError(
            f"cell {model.label} / {scenario.display_name} / n={n} / alpha={alpha} aborted",
            detail=result.error,
        )
    return result


def _blocks(grid: ExperimentGrid, options: SolverOptions | None) -> list[_Block]:
    targets = {
        (scenario.tag, alpha): cvar_target(
            scenario, alpha, mc_size=grid.target_mc_size, seed=grid.target_seed
        )
        for scenario in grid.scenarios
        for alpha in grid.alphas
    }
    return [
        _Block(
            model=model,
            scenario=scenario,
            n=n,
            alphas=tuple(grid.alphas),
            targets=tuple(targets[(scenario.tag, a)] for a in grid.alphas),
            replications=grid.replications,
            master_seed=grid.master_seed,
            burn_in=grid.burn_in,
            score_lambda=grid.score_lambda,
            method=grid.method,
            options=options,
        )
        for model in grid.models
        for scenario in grid.scenarios
        for n in grid.sizes
    ]


def run_grid(
    grid: ExperimentGrid, options: SolverOptions | None = None, workers: int = 1
) -> list[CellResult]:
    """
    One CellResult per cell, ordered model, scenario, n, alpha.

    Aborted cells carry NaN statistics and the reason in `error`; the grid
    always completes.
    """
    for model in grid.models:
        ARModel.require_stationary(model.phi, model.intercept)
    blocks = _blocks(grid, options)
    logger.info(
        "Running %d cells in %d blocks, R=%d, workers=%d",
        grid.cell_count,
        len(blocks),
        grid.replications,
        workers,
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_block: Sequence[list[CellResult]] = list(pool.map(_run_block, blocks))
    else:
        per_block = [_run_block(block) for block in blocks]
    results = [cell for block in per_block for cell in block]
    aborted = sum(1 for cell in results if cell.error is not None)
    if aborted:
        logger.warning("%d of %d cells aborted", aborted, len(results))
    return results

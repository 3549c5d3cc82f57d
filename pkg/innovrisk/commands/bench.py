"""
bench: the Monte Carlo grid of feasible vs oracle CVaR estimators.

Writes bench.csv and bench.txt to --out-dir.
"""

import argparse
import logging

from innovrisk.commands.common import emit, out_path, solver_options
from innovrisk.config import Settings
from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.experiment import ExperimentGrid, InnovationScenario, ScenarioTag
from innovrisk.services.harness import run_grid
from innovrisk.services.output import to_json_bytes, write_atomic
from innovrisk.services.tables import results_frame, to_csv_text, to_text_table

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("bench", parents=parents, help="Run the simulation grid")
    parser.add_argument(
        "--grid",
        choices=["standard", "paper"],
        default="standard",
        help=(
            "Base grid: 3 models x 4 scenarios x n in {100,200,500} x alpha in {0.95,0.99}; "
            "'paper' is an alias of 'standard'"
        ),
    )
    parser.add_argument("--replications", type=int, default=None, help="Replications per cell")
    parser.add_argument("--sizes", type=int, nargs="+", default=None, help="Restrict sample sizes")
    parser.add_argument("--alphas", type=float, nargs="+", default=None, help="Restrict levels")
    parser.add_argument(
        "--scenarios",
        nargs="+",
        choices=[tag.value for tag in ScenarioTag],
        default=None,
        help="Restrict innovation scenarios",
    )
    parser.add_argument(
        "--phi", type=float, nargs="+", default=None, help="Single model instead of the grid models"
    )
    parser.add_argument("--method", choices=["r", "arq"], default="r", help="Slope estimator")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes")
    parser.add_argument(
        "--target-mc-size", type=int, default=None, help="Draws for Monte Carlo targets"
    )
    parser.set_defaults(handler=run)


def build_grid(args: argparse.Namespace, settings: Settings) -> ExperimentGrid:
    """Standard grid with any command-line restriction applied."""
    update: dict = {
        "replications": args.replications or settings.replications,
        "master_seed": settings.master_seed,
        "burn_in": settings.burn_in,
        "score_lambda": settings.score_lambda,
        "method": args.method,
        "target_mc_size": args.target_mc_size or settings.target_mc_size,
        "target_seed": settings.target_seed,
    }
    if args.sizes:
        update["sizes"] = tuple(args.sizes)
    if args.alphas:
        update["alphas"] = tuple(args.alphas)
    if args.scenarios:
        update["scenarios"] = tuple(InnovationScenario.of(tag) for tag in args.scenarios)
    if args.phi:
        update["models"] = (ARModel(phi=tuple(args.phi)),)
    return ExperimentGrid(**update)


def run(args: argparse.Namespace, settings: Settings) -> int:
    grid = build_grid(args, settings)
    workers = args.workers or settings.workers
    results = run_grid(grid, options=solver_options(settings), workers=workers)

    frame = results_frame(results)
    csv_text = to_csv_text(frame)
    text = to_text_table(frame)
    write_atomic(out_path(settings, "bench.csv"), csv_text)
    write_atomic(out_path(settings, "bench.txt"), text)
    logger.info("Benchmark finished: %d cells", len(results))

    if settings.output_format == "json":
        emit(to_json_bytes(results))
    elif settings.output_format == "csv":
        emit(csv_text)
    else:
        emit(text)
    return 0

"""
simulate: draw an AR(p) path under one innovation scenario and write it as CSV.
"""

import argparse
import logging

import numpy as np
import pandas as pd

from innovrisk.commands.common import emit, out_path
from innovrisk.config import Settings
from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.experiment import InnovationScenario, ScenarioTag
from innovrisk.services.ar_core import simulate_ar
from innovrisk.services.output import to_json_bytes, write_frame_csv
from innovrisk.services.rng import RNG_ALGORITHM
from innovrisk.services.scenarios import make_sampler

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("simulate", parents=parents, help="Simulate an AR(p) series")
    parser.add_argument(
        "--phi", type=float, nargs="+", required=True, help="AR slopes phi_1..phi_p"
    )
    parser.add_argument("--intercept", type=float, default=None, help="Optional intercept")
    parser.add_argument("--n", type=int, required=True, help="Number of retained observations")
    parser.add_argument(
        "--scenario",
        choices=[tag.value for tag in ScenarioTag],
        default=ScenarioTag.NORMAL.value,
        help="Innovation law (default: normal)",
    )
    parser.add_argument("--burn-in", type=int, default=None, help="Discarded initial steps")
    parser.add_argument("--output", default="series.csv", help="File name inside --out-dir")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    model = ARModel.require_stationary(tuple(args.phi), args.intercept, settings.stationarity_tol)
    scenario = InnovationScenario.of(args.scenario)
    burn_in = args.burn_in if args.burn_in is not None else settings.burn_in
    series = simulate_ar(
        model,
        make_sampler(scenario),
        args.n,
        burn_in=burn_in,
        seed=settings.master_seed,
        label=model.label,
    )
    frame = pd.DataFrame({"t": np.arange(1, len(series) + 1), "value": series.values})
    path = write_frame_csv(out_path(settings, args.output), frame)
    logger.info(
        "Simulated %s under %s: n=%d, burn-in=%d, seed=%d",
        model.label,
        scenario.display_name,
        args.n,
        burn_in,
        settings.master_seed,
    )

    if settings.output_format == "json":
        emit(
            to_json_bytes(
                {
                    "output": str(path),
                    "model": model.model_dump(mode="json"),
                    "scenario": scenario.tag.value,
                    "n": args.n,
                    "burn_in": burn_in,
                    "seed": settings.master_seed,
                    "rng": RNG_ALGORITHM,
                }
            )
        )
    else:
        emit(str(path))
    return 0

"""
fit: estimate AR slopes from a CSV series (R-fit or autoregression quantile).
"""

import argparse
import logging

import pandas as pd

from innovrisk.commands.common import emit, out_path, solver_options
from innovrisk.config import Settings
from innovrisk.models.score import StepScore
from innovrisk.schemas.estimation import ARQuantile, RFit
from innovrisk.services.ar_core import build_lagged_design
from innovrisk.services.ar_quantile import fit_ar_quantile
from innovrisk.services.ingest import read_series_csv
from innovrisk.services.output import to_json_bytes, write_json
from innovrisk.services.rank_estimator import fit_r_estimator

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("fit", parents=parents, help="Estimate AR slopes")
    parser.add_argument("--input", required=True, help="CSV file holding the series")
    parser.add_argument("--column", default=None, help="Series column (default: value)")
    parser.add_argument("--p", type=int, default=1, help="AR order (default: 1)")
    parser.add_argument(
        "--method",
        choices=["r", "arq"],
        default="r",
        help="r: rank R-estimator; arq: autoregression quantile",
    )
    parser.add_argument("--solver", choices=["pattern", "lp"], default=None, help="R-fit solver")
    parser.add_argument(
        "--lambda", dest="score_lambda", type=float, default=None, help="Step score lambda"
    )
    parser.add_argument("--alpha", type=float, default=0.5, help="Quantile level for --method arq")
    parser.add_argument("--output", default="fit.json", help="File name inside --out-dir")
    parser.set_defaults(handler=run)


def _text(fit: RFit | ARQuantile) -> str:
    if isinstance(fit, RFit):
        slopes = " ".join(f"{s:.6f}" for s in fit.slopes)
        return f"R-fit slopes: {slopes}  D={fit.dispersion_at_min:.6g}  n_eff={fit.n_eff}"
    coeffs = " ".join(f"{c:.6f}" for c in fit.coeffs)
    return (
        f"AR quantile alpha={fit.alpha:g}: {coeffs}  "
        f"objective={fit.objective:.6g}  n_eff={fit.n_eff}"
    )


def run(args: argparse.Namespace, settings: Settings) -> int:
    series = read_series_csv(args.input, args.column or settings.value_column)
    options = solver_options(settings, args.solver)
    fit: RFit | ARQuantile
    if args.method == "r":
        lam = args.score_lambda if args.score_lambda is not None else settings.score_lambda
        fit = fit_r_estimator(build_lagged_design(series, args.p), StepScore(lam), options)
    else:
        design = build_lagged_design(series, args.p, with_intercept=True)
        fit = fit_ar_quantile(design, args.alpha, options)
    write_json(out_path(settings, args.output), fit)
    logger.info("Fitted %s on %s (n=%d)", args.method, args.input, len(series))

    if settings.output_format == "json":
        emit(to_json_bytes(fit))
    elif settings.output_format == "csv":
        row = fit.model_dump(mode="json", by_alias=True)
        row.pop("solver_trace", None)
        emit(pd.DataFrame([row]).to_csv(index=False, lineterminator="\n"))
    else:
        emit(_text(fit))
    return 0

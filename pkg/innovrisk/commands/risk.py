"""
risk: VaR and CVaR of a residual sample, or of the innovations of a series
after an AR(p) slope fit.
"""

import argparse
import logging

import pandas as pd

from innovrisk.commands.common import emit, out_path, solver_options
from innovrisk.config import Settings
from innovrisk.schemas.risk import RiskMethod, RiskReport
from innovrisk.services.ar_core import build_lagged_design, residuals
from innovrisk.services.ingest import read_series_csv
from innovrisk.services.output import to_json_bytes, write_json
from innovrisk.services.risk import estimate_innovation_risk, fit_slopes, risk_reports

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("risk", parents=parents, help="VaR/CVaR report")
    parser.add_argument("--input", required=True, help="CSV file with a series or residuals")
    parser.add_argument("--column", default=None, help="Value column (default: value)")
    parser.add_argument(
        "--residuals", action="store_true", help="Input already holds residuals; skip the fit"
    )
    parser.add_argument("--p", type=int, default=1, help="AR order of the slope fit")
    parser.add_argument("--alpha", type=float, nargs="+", default=None, help="Risk levels")
    parser.add_argument(
        "--method",
        choices=[m.value for m in RiskMethod],
        default=RiskMethod.MINIMIZATION.value,
        help="CVaR estimator (default: minimization)",
    )
    parser.add_argument(
        "--slopes", choices=["r", "arq"], default="r", help="Slope estimator for series input"
    )
    parser.add_argument(
        "--lambda", dest="score_lambda", type=float, default=None, help="Step score lambda"
    )
    parser.add_argument("--output", default="risk.json", help="File name inside --out-dir")
    parser.set_defaults(handler=run)


def _text(reports: list[RiskReport]) -> str:
    lines = [f"{'alpha':>7} {'VaR':>12} {'CVaR':>12} {'n_eff':>7}"]
    lines += [
        f"{r.alpha:>7g} {r.var_hat:>12.6f} {r.cvar_hat:>12.6f} {r.n_eff:>7d}" for r in reports
    ]
    return "\n".join(lines)


def run(args: argparse.Namespace, settings: Settings) -> int:
    alphas = tuple(args.alpha) if args.alpha else settings.alphas
    method = RiskMethod(args.method)
    lam = args.score_lambda if args.score_lambda is not None else settings.score_lambda
    series = read_series_csv(args.input, args.column or settings.value_column)

    if args.residuals:
        sample = series.values
        if settings.center_residuals:
            sample = sample - sample.mean()
        reports = risk_reports(sample, alphas, method)
    elif method is RiskMethod.MINIMIZATION:
        reports = estimate_innovation_risk(
            series,
            args.p,
            alphas,
            score_lambda=lam,
            method=args.slopes,
            options=solver_options(settings),
            center=settings.center_residuals,
        )
    else:
        slopes = fit_slopes(series, args.p, lam, args.slopes, solver_options(settings))
        resid = residuals(build_lagged_design(series, args.p), slopes)
        if settings.center_residuals:
            resid = resid - resid.mean()
        reports = risk_reports(resid, alphas, method, slopes)

    write_json(out_path(settings, args.output), reports)
    logger.info("Risk report for %s at levels %s", args.input, list(alphas))

    if settings.output_format == "json":
        emit(to_json_bytes(reports))
    elif settings.output_format == "csv":
        rows = [r.model_dump(mode="json") for r in reports]
        emit(pd.DataFrame(rows).to_csv(index=False, lineterminator="\n"))
    else:
        emit(_text(reports))
    return 0

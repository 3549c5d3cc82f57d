"""
analyze: daily gauge CSV to AnalysisReport JSON plus an exceedance CSV.
"""

import argparse
import logging
from pathlib import Path

import pandas as pd

from innovrisk.commands.common import emit, out_path, solver_options
from innovrisk.config import Settings
from innovrisk.schemas.report import AnalysisReport
from innovrisk.services.analysis import analyze
from innovrisk.services.ingest import parse_daily_csv
from innovrisk.services.output import to_json_bytes, write_frame_csv, write_json

logger = logging.getLogger(__name__)

REPORT_FILE = "analysis_report.json"
EXCEEDANCE_FILE = "exceedances.csv"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("analyze", parents=parents, help="Analyze a daily gauge file")
    parser.add_argument("--input", required=True, help="Gauge CSV with date and discharge columns")
    parser.add_argument("--date-column", default=None, help="Date column (default: date)")
    parser.add_argument("--value-column", default=None, help="Discharge column (default: value)")
    parser.add_argument("--date-format", default=None, help="strptime format of the date column")
    parser.add_argument("--p", type=int, default=1, help="AR order (default: 1)")
    parser.add_argument(
        "--lambda", dest="score_lambda", type=float, default=None, help="Step score lambda"
    )
    parser.add_argument("--alpha", type=float, nargs="+", default=None, help="Risk levels")
    parser.add_argument(
        "--flag-level", type=float, default=None, help="VaR level for exceedance flags"
    )
    parser.add_argument("--label", default=None, help="Gauge label (default: file name)")
    parser.set_defaults(handler=run)


def exceedance_frame(report: AnalysisReport) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "date": [d.isoformat() for d in report.exceedance_dates],
            "residual": list(report.exceedance_residuals),
        }
    )


def _text(report: AnalysisReport) -> str:
    slopes = ", ".join(f"{v:.4f}" for v in report.phi_hat)
    lines = [
        f"{report.gauge} {report.period_start} .. {report.period_end}",
        f"  n_eff={report.n_eff}  phi_hat=({slopes})  lambda={report.lambda_:g}",
    ]
    lines += [
        f"  alpha={lvl.alpha:g}  VaR={lvl.var_hat:.4f}  CVaR={lvl.cvar_hat:.4f}"
        for lvl in report.levels
    ]
    lines.append(
        f"  {len(report.exceedance_dates)} exceedance(s) of "
        f"VaR_{report.flag_level:g}={report.flag_var:.4f}"
    )
    return "\n".join(lines)


def run(args: argparse.Namespace, settings: Settings) -> int:
    records = parse_daily_csv(
        args.input,
        date_column=args.date_column or settings.date_column,
        value_column=args.value_column or settings.value_column,
        date_format=args.date_format or settings.date_format,
    )
    report = analyze(
        records,
        p=args.p,
        score_lambda=args.score_lambda if args.score_lambda is not None else settings.score_lambda,
        alphas=tuple(args.alpha) if args.alpha else settings.alphas,
        flag_level=args.flag_level if args.flag_level is not None else settings.flag_level,
        label=args.label or Path(args.input).stem,
        options=solver_options(settings),
        center=settings.center_residuals,
    )
    write_json(out_path(settings, REPORT_FILE), report)
    write_frame_csv(out_path(settings, EXCEEDANCE_FILE), exceedance_frame(report))

    if settings.output_format == "json":
        emit(to_json_bytes(report))
    elif settings.output_format == "csv":
        emit(exceedance_frame(report).to_csv(index=False, lineterminator="\n"))
    else:
        emit(_text(report))
    return 0

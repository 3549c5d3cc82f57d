"""
Command-line entry point.

    innovrisk [global flags] <command> [command flags]

Commands: simulate, fit, risk, bench, analyze. Global flags may also follow
the command name.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError as PydanticValidationError

from innovrisk import __version__
from innovrisk.config import Settings, get_settings, load_settings
from innovrisk.exceptions import InnovRiskError, UsageError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message, detail=self.prog)


def _add_global_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--seed", type=int, default=default, help="Master seed")
    parser.add_argument("--config", default=default, help="Flat key=value config file")
    parser.add_argument("--out-dir", default=default, help="Directory for artifacts")
    parser.add_argument(
        "--format", choices=["csv", "json", "text"], default=default, help="Standard output format"
    )
    parser.add_argument("--log-level", default=default, help="Logging level (default: INFO)")


def create_parser() -> argparse.ArgumentParser:
    """Build the parser with one subparser per command module."""
    from innovrisk.commands import analyze, bench, fit, risk, simulate

    parser = CliParser(
        prog="innovrisk",
        description="Tail risk (VaR, CVaR) of AR innovations with rank-based slope estimation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_flags(parser, default=None)

    # repeated on every subparser; SUPPRESS keeps values given before the command
    globals_after = CliParser(add_help=False)
    _add_global_flags(globals_after, default=argparse.SUPPRESS)

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for command in (simulate, fit, risk, bench, analyze):
        command.register(subparsers, parents=[globals_after])
    return parser


def configure_logging(level: str) -> None:
    """Single stderr handler; stdout carries results only."""
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise UsageError(f"unknown log level '{level}'")
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    root.setLevel(numeric)


def resolve_settings(args: argparse.Namespace) -> Settings:
    """Config file and command-line flags layered over the environment."""
    overrides = {
        "master_seed": args.seed,
        "out_dir": args.out_dir,
        "output_format": args.format,
        "log_level": args.log_level,
    }
    if args.config is None and all(v is None for v in overrides.values()):
        return get_settings()
    return load_settings(args.config, **overrides)


def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    """
    Run one command and return its exit code.

    Errors are printed to stderr as ERROR[<code>]: <message>.
    """
    try:
        parser = create_parser()
        args = parser.parse_args(list(argv) if argv is not None else None)
        try:
            settings = resolve_settings(args)
        except ValueError as exc:
            raise UsageError("invalid configuration", detail=str(exc)) from exc
        configure_logging(settings.log_level)
        logger.debug("innovrisk %s: %s", __version__, args.command)
        try:
            return int(args.handler(args, settings))
        except PydanticValidationError as exc:
            raise UsageError("invalid arguments", detail=str(exc)) from exc
    except InnovRiskError as exc:
        print(f"ERROR[{exc.exit_code}]: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()

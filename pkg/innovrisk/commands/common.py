"""
Helpers shared by the subcommands.
"""

import sys
from pathlib import Path

from innovrisk.config import Settings
from innovrisk.schemas.estimation import SolverOptions


def out_path(settings: Settings, name: str) -> Path:
    return Path(settings.out_dir) / name


def solver_options(settings: Settings, method: str | None = None) -> SolverOptions:
    options = SolverOptions.from_settings(settings)
    if method is not None:
        options = options.model_copy(update={"method": method})
    return options


def emit(text: str | bytes) -> None:
    """Write a result to stdout, newline-terminated."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    sys.stdout.flush()

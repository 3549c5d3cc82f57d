"""
Custom exception hierarchy for consistent error reporting.

Usage:
    from innovrisk.exceptions import SeriesTooShortError, TailTooThinError

    raise SeriesTooShortError(required=p + 1, actual=len(series))
    raise TailTooThinError(n=len(sample), alpha=alpha)

Every error carries a class-level exit code. The CLI dispatcher catches
InnovRiskError and prints a machine-parsable line to stderr:
    ERROR[<exit code>]: <message>
"""

import datetime as dt
import math
from typing import Any

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class InnovRiskError(Exception):
    """Base application error with a default exit code."""

    exit_code: int = EXIT_USAGE

    def __init__(self, message: str, detail: str | None = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        if self.detail:
            return f"{self.message} ({self.detail})"
        return self.message


# ---------------------------------------------------------
# Usage errors (exit 1)
# ---------------------------------------------------------


class UsageError(InnovRiskError):
    """Command-line misuse."""

    exit_code = EXIT_USAGE


class ValidationError(InnovRiskError, ValueError):
    """A parameter is outside its admissible range."""

    exit_code = EXIT_USAGE


# ---------------------------------------------------------
# Data errors (exit 2)
# ---------------------------------------------------------


class DataError(InnovRiskError, ValueError):
    """Input data cannot be used as given."""

    exit_code = EXIT_DATA


class SeriesTooShortError(DataError):
    """Series has fewer observations than the operation needs."""

    def __init__(self, required: int, actual: int):
        super().__init__(f"Series too short: need at least {required} values, got {actual}")
        self.required = required
        self.actual = actual


class DimensionMismatchError(DataError):
    """Vector or matrix dimensions do not agree."""

    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(f"{what}: expected length {expected}, got {actual}")


class NonFiniteError(DataError):
    """A NaN or infinite value where finite input is required."""

    def __init__(self, what: str, index: int | None = None):
        where = f" at index {index}" if index is not None else ""
        super().__init__(f"{what} contains a non-finite value{where}")


class NonStationaryError(DataError):
    """AR model whose characteristic roots are not inside the unit circle."""

    def __init__(self, phi: tuple[float, ...], max_modulus: float):
        super().__init__(
            f"AR model phi={list(phi)} is not stationary (max root modulus {max_modulus:.6g})"
        )
        self.max_modulus = max_modulus


class MissingColumnError(DataError):
    """Required CSV columns are absent."""

    def __init__(self, missing: list[str], available: list[str]):
        super().__init__(
            f"Missing column(s): {', '.join(missing)}",
            detail=f"available: {', '.join(available)}",
        )


class DuplicateDateError(DataError):
    """The same date appears more than once in a daily file."""

    def __init__(self, date: dt.date):
        super().__init__(f"Duplicate date {date.isoformat()}")
        self.date = date


class NegativeValueError(DataError):
    """Negative discharge where log(1 + value) is required."""

    def __init__(self, date: dt.date, value: float):
        super().__init__(f"Negative value {value} on {date.isoformat()}")
        self.date = date


class EmptyTailError(DataError):
    """No sample value lies strictly above the value at risk."""

    def __init__(self, alpha: float):
        super().__init__(f"No sample value strictly exceeds VaR at alpha={alpha}")


class InsufficientDataError(DataError):
    """Not enough usable rows after missing-data handling."""


# ---------------------------------------------------------
# Numerical failures (exit 3)
# ---------------------------------------------------------


class NumericalError(InnovRiskError):
    """A numerical procedure failed."""

    exit_code = EXIT_NUMERICAL


class RankDeficientError(NumericalError):
    """Regression design without full column rank (e.g. a constant lag column)."""


class ConvergenceError(NumericalError):
    """Solver did not certify optimality; carries the best point found."""

    def __init__(self, message: str, best_point: Any = None, best_value: float | None = None):
        super().__init__(message)
        self.best_point = best_point
        self.best_value = best_value


class TailTooThinError(NumericalError):
    """floor(n * (1 - alpha)) < 1, so the empirical tail is empty."""

    def __init__(self, n: int, alpha: float):
        needed = math.ceil(1.0 / (1.0 - alpha) - 1e-9)
        super().__init__(
            f"Tail too thin: n={n} observations leave no tail at alpha={alpha}",
            detail=f"use at least {needed} observations or a smaller alpha",
        )
        self.n = n
        self.alpha = alpha


class CellAbortedError(NumericalError):
    """Too many failed replications in one simulation cell."""

"""
Observed series and the lagged regression view of an AR(p) model.

Both containers are frozen dataclasses over read-only numpy arrays, so they
can be shared between worker processes and threads without copying rules.
"""

from __future__ import annotations

import datetime as dt
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from innovrisk.exceptions import DimensionMismatchError, NonFiniteError, ValidationError


def _frozen_array(values: Sequence[float] | np.ndarray, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=float, copy=True)
    if array.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Series:
    """Time-ordered observations X_1..X_n, optionally dated."""

    values: np.ndarray
    label: str | None = None
    dates: tuple[dt.date, ...] | None = None

    def __post_init__(self) -> None:
        values = _frozen_array(self.values, ndim=1)
        if values.size == 0:
            raise ValidationError("a series needs at least one value")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NonFiniteError("series", int(bad[0]))
        if self.dates is not None and len(self.dates) != values.size:
            raise DimensionMismatchError("series dates", values.size, len(self.dates))
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def shifted(self, constant: float) -> Series:
        """Same series with a constant added to every value."""
        return Series(self.values + constant, label=self.label, dates=self.dates)


@dataclass(frozen=True, eq=False)
class LaggedDesign:
    """
    Regression view (X_t, Y_{t-1}) of an AR(p) series.

    Row t of `lags` is (X_{t-1}, ..., X_{t-p}); `responses[t]` is X_t.
    With `with_intercept` the regressor matrix gains a leading column of ones,
    i.e. rows Y*_{t-1} = (1, X_{t-1}, ..., X_{t-p}).
    """

    responses: np.ndarray
    lags: np.ndarray
    with_intercept: bool = False
    response_dates: tuple[dt.date, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        responses = _frozen_array(self.responses, ndim=1)
        lags = _frozen_array(self.lags, ndim=2)
        if lags.shape[0] != responses.size:
            raise DimensionMismatchError("lag matrix rows", responses.size, lags.shape[0])
        if self.response_dates is not None and len(self.response_dates) != responses.size:
            raise DimensionMismatchError("response dates", responses.size, len(self.response_dates))
        object.__setattr__(self, "responses", responses)
        object.__setattr__(self, "lags", lags)

    @property
    def p(self) -> int:
        return int(self.lags.shape[1])

    @property
    def n_eff(self) -> int:
        return int(self.responses.size)

    @property
    def regressors(self) -> np.ndarray:
        """Lag matrix, with the column of ones prepended when the design has an intercept."""
        if self.with_intercept:
            return np.column_stack([np.ones(self.n_eff), self.lags])
        return self.lags

    @classmethod
    def pooled(cls, designs: Sequence[LaggedDesign]) -> LaggedDesign:
        """Stack designs row-wise; rows never span the boundary between two designs."""
        if not designs:
            raise ValidationError("cannot pool an empty list of designs")
        orders = {d.p for d in designs}
        intercepts = {d.with_intercept for d in designs}
        if len(orders) != 1 or len(intercepts) != 1:
            raise ValidationError("pooled designs must share order and intercept flag")
        dated = all(d.response_dates is not None for d in designs)
        dates: tuple[dt.date, ...] | None = None
        if dated:
            dates = tuple(day for d in designs for day in d.response_dates or ())
        return cls(
            responses=np.concatenate([d.responses for d in designs]),
            lags=np.vstack([d.lags for d in designs]),
            with_intercept=designs[0].with_intercept,
            response_dates=dates,
        )

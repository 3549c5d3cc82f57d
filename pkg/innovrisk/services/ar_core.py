"""
AR(p) core: lagged designs, simulation with burn-in, residuals and the
stationarity check.
"""

import cmath
import logging
from collections.abc import Callable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.linalg import companion
from scipy.signal import lfilter

from innovrisk.exceptions import (
    DimensionMismatchError,
    NonFiniteError,
    NonStationaryError,
    SeriesTooShortError,
    ValidationError,
)
from innovrisk.models.series import LaggedDesign, Series
from innovrisk.schemas.ar import ARModel, StationarityVerdict
from innovrisk.services.rng import SeedLike, make_generator

logger = logging.getLogger(__name__)

DEFAULT_BURN_IN = 500
DEFAULT_STATIONARITY_TOL = 1e-9

# (generator, size) -> i.i.d. draws
Sampler = Callable[[np.random.Generator, int], np.ndarray]


def build_lagged_design(series: Series, p: int, with_intercept: bool = False) -> LaggedDesign:
    """
    Regression view of a series: responses X_{p+1..n}, lag rows (X_{t-1}, ..., X_{t-p}).

    p = 0 is accepted and yields an empty lag matrix (intercept-only design).
    """
    if p < 0:
        raise ValidationError(f"AR order must be non-negative, got {p}")
    values = series.values
    n = values.size
    if n <= p:
        raise SeriesTooShortError(required=p + 1, actual=n)

    responses = values[p:]
    if p == 0:
        lags = np.empty((n, 0))
    else:
        # windows hold (X_{t-p}, ..., X_{t-1}); reverse to lag order
        lags = sliding_window_view(values[:-1], p)[:, ::-1]

    dates = series.dates[p:] if series.dates is not None else None
    return LaggedDesign(
        responses=responses, lags=lags, with_intercept=with_intercept, response_dates=dates
    )


def check_stationary(
    model: ARModel | Sequence[float], tol: float = DEFAULT_STATIONARITY_TOL
) -> StationarityVerdict:
    """
    Largest root modulus of z^p - phi_1 z^{p-1} - ... - phi_p.

    Closed forms for p <= 2; companion-matrix eigenvalues (spectral radius) beyond.
    """
    if not 0.0 < tol <= 1e-3:
        raise ValidationError(f"stationarity tolerance must lie in (0, 1e-3], got {tol}")
    phi = tuple(model.phi) if isinstance(model, ARModel) else tuple(float(v) for v in model)
    if not phi:
        raise ValidationError("AR model needs at least one slope")

    if len(phi) == 1:
        max_modulus = abs(phi[0])
    elif len(phi) == 2:
        disc = cmath.sqrt(phi[0] ** 2 + 4.0 * phi[1])
        max_modulus = max(abs((phi[0] + disc) / 2.0), abs((phi[0] - disc) / 2.0))
    else:
        matrix = companion(np.concatenate([[1.0], -np.asarray(phi)]))
        max_modulus = float(np.max(np.abs(np.linalg.eigvals(matrix))))

    return StationarityVerdict(stationary=max_modulus < 1.0 - tol, max_modulus=float(max_modulus))


def simulate_ar(
    model: ARModel,
    innovations: np.ndarray | Sequence[float] | Sampler,
    n: int,
    burn_in: int = DEFAULT_BURN_IN,
    seed: SeedLike = None,
    require_stationary: bool = True,
    label: str | None = None,
) -> Series:
    """
    Simulate n observations of the AR recursion from a zero initial state.

    `innovations` is either a vector of exactly burn_in + n draws or a sampler
    called once as sampler(generator, burn_in + n). The first burn_in values
    are discarded.
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if burn_in < 0:
        raise ValidationError(f"burn_in must be non-negative, got {burn_in}")
    if require_stationary:
        verdict = check_stationary(model)
        if not verdict.stationary:
            raise NonStationaryError(model.phi, verdict.max_modulus)

    total = burn_in + n
    if callable(innovations):
        z = np.asarray(innovations(make_generator(seed), total), dtype=float)
    else:
        z = np.asarray(innovations, dtype=float)
    if z.shape != (total,):
        raise DimensionMismatchError("innovations", total, int(z.size))
    bad = np.flatnonzero(~np.isfinite(z))
    if bad.size:
        raise NonFiniteError("innovations", int(bad[0]))

    drive = z + (model.intercept or 0.0)
    path = lfilter([1.0], np.concatenate([[1.0], -np.asarray(model.phi)]), drive)
    return Series(path[burn_in:], label=label)


def residuals(
    design: LaggedDesign, slopes: Sequence[float] | np.ndarray, intercept: float | None = None
) -> np.ndarray:
    """X_t - slopes . Y_{t-1} (- intercept)."""
    b = np.asarray(slopes, dtype=float).reshape(-1)
    if b.size != design.p:
        raise DimensionMismatchError("slope vector", design.p, int(b.size))
    fitted = design.lags @ b if design.p else np.zeros(design.n_eff)
    out = design.responses - fitted
    if intercept is not None:
        out = out - intercept
    return out


def design_covariance(design: LaggedDesign, centered: bool = False) -> np.ndarray:
    """
    n_eff^-1 sum_t Y_{t-1} Y_{t-1}^T (with the intercept row when the design has one).

    With `centered` the lag vectors are demeaned first.
    """
    x = design.regressors
    if centered:
        x = x - x.mean(axis=0)
    cov = x.T @ x / design.n_eff
    return (cov + cov.T) / 2.0

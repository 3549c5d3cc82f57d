"""Tests for lagged designs, simulation, residuals and the stationarity check."""

import datetime as dt

import numpy as np
import pytest

from innovrisk.exceptions import (
    DimensionMismatchError,
    NonStationaryError,
    SeriesTooShortError,
    ValidationError,
)
from innovrisk.models.series import Series
from innovrisk.schemas.ar import ARModel
from innovrisk.services.ar_core import (
    build_lagged_design,
    check_stationary,
    design_covariance,
    residuals,
    simulate_ar,
)


def test_lagged_design_rows():
    design = build_lagged_design(Series([1.0, 2.0, 3.0, 4.0, 5.0]), p=2)
    np.testing.assert_array_equal(design.responses, [3.0, 4.0, 5.0])
    np.testing.assert_array_equal(design.lags, [[2.0, 1.0], [3.0, 2.0], [4.0, 3.0]])
    assert design.n_eff == 3
    assert design.p == 2


def test_lagged_design_with_intercept():
    design = build_lagged_design(Series([1.0, 2.0, 3.0]), p=1, with_intercept=True)
    np.testing.assert_array_equal(design.regressors, [[1.0, 1.0], [1.0, 2.0]])


def test_lagged_design_order_zero():
    design = build_lagged_design(Series([4.0, 5.0, 6.0]), p=0, with_intercept=True)
    assert design.lags.shape == (3, 0)
    np.testing.assert_array_equal(design.regressors, np.ones((3, 1)))


def test_lagged_design_carries_response_dates():
    dates = tuple(dt.date(2024, 1, d) for d in range(1, 5))
    design = build_lagged_design(Series([1.0, 2.0, 3.0, 4.0], dates=dates), p=1)
    assert design.response_dates == dates[1:]


def test_lagged_design_too_short():
    with pytest.raises(SeriesTooShortError) as exc:
        build_lagged_design(Series([1.0, 2.0]), p=2)
    assert exc.value.required == 3
    with pytest.raises(ValidationError):
        build_lagged_design(Series([1.0, 2.0]), p=-1)


@pytest.mark.parametrize(
    "phi, stationary, modulus",
    [
        ((0.5,), True, 0.5),
        ((-0.9,), True, 0.9),
        ((1.0,), False, 1.0),
        ((0.5, -0.2), True, np.sqrt(0.2)),
        ((1.2, -0.2), False, 1.0),
    ],
)
def test_check_stationary_closed_forms(phi, stationary, modulus):
    verdict = check_stationary(ARModel(phi=phi))
    assert verdict.stationary is stationary
    assert verdict.max_modulus == pytest.approx(modulus, abs=1e-12)


def test_check_stationary_matches_polynomial_roots(rng):
    for p in (2, 3, 4):
        for _ in range(20):
            phi = rng.uniform(-0.6, 0.6, size=p)
            expected = np.max(np.abs(np.roots(np.concatenate([[1.0], -phi]))))
            verdict = check_stationary(tuple(phi))
            assert verdict.max_modulus == pytest.approx(expected, rel=1e-9)


def test_check_stationary_tolerance_range():
    with pytest.raises(ValidationError):
        check_stationary((0.5,), tol=0.0)
    with pytest.raises(ValidationError):
        check_stationary((0.5,), tol=1e-2)
    # a root just inside the unit circle is still rejected within tolerance
    assert check_stationary((1.0 - 1e-12,)).stationary is False


def test_simulate_follows_the_recursion():
    z = np.array([1.0, 0.0, 2.0, -1.0])
    series = simulate_ar(ARModel(phi=(0.5,)), z, n=4, burn_in=0)
    np.testing.assert_allclose(series.values, [1.0, 0.5, 2.25, 0.125])


def test_simulate_drops_burn_in():
    z = np.arange(1.0, 6.0)
    series = simulate_ar(ARModel(phi=(0.0,)), z, n=3, burn_in=2)
    np.testing.assert_array_equal(series.values, [3.0, 4.0, 5.0])


def test_simulate_intercept_reaches_stationary_mean():
    model = ARModel(phi=(0.5,), intercept=1.0)
    series = simulate_ar(model, np.zeros(510), n=10, burn_in=500)
    np.testing.assert_allclose(series.values, 2.0, rtol=1e-12)


def test_simulate_is_deterministic_given_seed():
    model = ARModel(phi=(0.5, -0.2))

    def sampler(gen, size):
        return gen.standard_normal(size)

    first = simulate_ar(model, sampler, n=200, seed=42)
    second = simulate_ar(model, sampler, n=200, seed=42)
    third = simulate_ar(model, sampler, n=200, seed=43)
    np.testing.assert_array_equal(first.values, second.values)
    assert not np.array_equal(first.values, third.values)


def test_simulate_rejects_non_stationary_and_bad_innovations():
    with pytest.raises(NonStationaryError):
        simulate_ar(ARModel(phi=(1.0,)), np.zeros(10), n=5, burn_in=5)
    with pytest.raises(DimensionMismatchError):
        simulate_ar(ARModel(phi=(0.5,)), np.zeros(7), n=5, burn_in=5)
    explosive = simulate_ar(
        ARModel(phi=(1.0,)), np.ones(3), n=3, burn_in=0, require_stationary=False
    )
    np.testing.assert_array_equal(explosive.values, [1.0, 2.0, 3.0])


def test_residuals_at_true_slopes_recover_innovations(rng):
    z = rng.standard_normal(300)
    series = simulate_ar(ARModel(phi=(0.5, -0.2)), z, n=300, burn_in=0)
    resid = residuals(build_lagged_design(series, 2), (0.5, -0.2))
    np.testing.assert_allclose(resid, z[2:], atol=1e-12)


def test_residuals_with_intercept_and_bad_dimension():
    design = build_lagged_design(Series([1.0, 2.0, 3.0]), p=1)
    np.testing.assert_allclose(residuals(design, (1.0,), intercept=1.0), [0.0, 0.0])
    with pytest.raises(DimensionMismatchError):
        residuals(design, (1.0, 2.0))


def test_design_covariance(ar_series):
    design = build_lagged_design(ar_series(phi=(0.5, -0.2), n=400), p=2)
    raw = design_covariance(design)
    np.testing.assert_allclose(raw, design.lags.T @ design.lags / design.n_eff)
    centered = design_covariance(design, centered=True)
    np.testing.assert_allclose(centered, np.cov(design.lags.T, bias=True))
    assert np.all(np.linalg.eigvalsh(centered) > 0)

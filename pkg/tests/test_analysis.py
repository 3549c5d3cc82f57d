"""Tests for the real-data workflow on gauge records."""

import datetime as dt
import os
from pathlib import Path

import jsonschema
import numpy as np
import orjson
import pytest

from innovrisk.exceptions import InsufficientDataError, ValidationError
from innovrisk.models.series import LaggedDesign
from innovrisk.schemas.report import DailyRecord, load_report_schema
from innovrisk.services.analysis import analyze
from innovrisk.services.ar_core import build_lagged_design, residuals
from innovrisk.services.ingest import parse_daily_csv, transform_log1p
from innovrisk.services.output import to_json_bytes
from innovrisk.services.risk import var_hat

CHMI_FILE = os.environ.get("INNOVRISK_CHMI_FILE")


@pytest.fixture
def gauge_report(gauge_file):
    return analyze(parse_daily_csv(gauge_file), label="synthetic")


def test_gauge_slope_is_recovered(gauge_report):
    assert abs(gauge_report.phi_hat[0] - 0.87) < 0.05
    assert gauge_report.n_eff == 1445
    assert gauge_report.segments_used == 7
    assert gauge_report.missing_values == 5
    assert gauge_report.period_start == dt.date(2021, 1, 1)
    assert gauge_report.period_end == dt.date(2024, 12, 31)


def test_gauge_levels_are_ordered(gauge_report):
    low, high = gauge_report.level(0.95), gauge_report.level(0.99)
    assert low.var_hat <= low.cvar_hat
    assert high.var_hat <= high.cvar_hat
    assert low.cvar_hat < high.cvar_hat
    with pytest.raises(KeyError):
        gauge_report.level(0.5)


def test_exceedances_match_a_recomputation(gauge_file, gauge_report):
    segments = transform_log1p(parse_daily_csv(gauge_file))
    design = LaggedDesign.pooled([build_lagged_design(s, 1) for s in segments if len(s) > 1])
    resid = residuals(design, gauge_report.phi_hat)
    threshold = var_hat(resid, 0.99)
    expected = [d for d, r in zip(design.response_dates, resid, strict=True) if r > threshold]
    assert gauge_report.flag_var == pytest.approx(threshold)
    assert list(gauge_report.exceedance_dates) == expected
    assert len(expected) == 15
    assert all(r > gauge_report.flag_var for r in gauge_report.exceedance_residuals)


def test_report_matches_the_published_schema(gauge_report):
    payload = orjson.loads(to_json_bytes(gauge_report))
    jsonschema.validate(payload, load_report_schema())
    assert payload["lambda"] == 0.5
    assert payload["exceedance_dates"][0].count("-") == 2


def test_pooled_rows_never_cross_a_gap():
    start = dt.date(2024, 1, 1)
    rng = np.random.default_rng(3)
    records = [
        DailyRecord(date=start + dt.timedelta(days=i), value=None if i == 60 else float(v))
        for i, v in enumerate(rng.gamma(2.0, 1.0, 120))
    ]
    report = analyze(records)
    # segments of 60 and 59 values lose one row each
    assert report.n_eff == 117
    assert report.segments_used == 2


def test_insufficient_data():
    start = dt.date(2024, 1, 1)
    short = [DailyRecord(date=start + dt.timedelta(days=i), value=float(i)) for i in range(20)]
    with pytest.raises(InsufficientDataError):
        analyze(short)
    with pytest.raises(InsufficientDataError):
        analyze([])
    with pytest.raises(ValidationError):
        analyze(short, flag_level=1.0)


@pytest.mark.skipif(
    CHMI_FILE is None, reason="set INNOVRISK_CHMI_FILE to a CHMI daily discharge CSV"
)
def test_chmi_record_reproduces_the_published_values():
    records = parse_daily_csv(
        Path(CHMI_FILE),
        date_column=os.environ.get("INNOVRISK_CHMI_DATE_COLUMN", "date"),
        value_column=os.environ.get("INNOVRISK_CHMI_VALUE_COLUMN", "value"),
    )
    report = analyze(records, label="Labsky dul")
    assert abs(report.phi_hat[0] - 0.8712) < 0.02
    assert abs(report.level(0.95).cvar_hat - 0.3352) < 0.02
    assert abs(report.level(0.99).cvar_hat - 0.5855) < 0.04

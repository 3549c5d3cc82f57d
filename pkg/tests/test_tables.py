"""Tests for benchmark frames and their text renderings."""

import io

import pandas as pd

from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.experiment import CellResult, ScenarioTag
from innovrisk.services.tables import TABLE_COLUMNS, results_frame, to_csv_text, to_text_table


def cell(model=(0.5,), scenario=ScenarioTag.NORMAL, n=100, alpha=0.95, error=None) -> CellResult:
    nan = float("nan")
    return CellResult(
        model=ARModel(phi=model),
        scenario=scenario,
        n=n,
        alpha=alpha,
        bias_r=nan if error else -0.01,
        rmse_r=nan if error else 0.2,
        bias_oracle=nan if error else -0.008,
        rmse_oracle=nan if error else 0.19,
        target=2.0627,
        replications_used=200,
        failures=0,
        error=error,
    )


def test_frame_columns_and_order():
    results = [
        cell(model=(0.8,), n=200, alpha=0.99),
        cell(model=(0.8,), n=100, alpha=0.99),
        cell(model=(0.8,), scenario=ScenarioTag.T3, n=100, alpha=0.95),
        cell(model=(0.5,), n=100, alpha=0.95),
    ]
    frame = results_frame(results)
    assert list(frame.columns) == TABLE_COLUMNS
    # models keep first-appearance order; rows sort by alpha, scenario, n
    assert list(frame["model"]) == ["AR(1) phi=(0.8)"] * 3 + ["AR(1) phi=(0.5)"]
    assert list(frame["alpha"]) == [0.95, 0.99, 0.99, 0.95]
    assert list(frame["n"]) == [100, 100, 200, 100]
    assert frame.loc[0, "scenario"] == "t3"


def test_csv_text_round_trips_through_pandas():
    frame = results_frame([cell(), cell(n=50, alpha=0.99, error="Tail too thin")])
    parsed = pd.read_csv(io.StringIO(to_csv_text(frame)), keep_default_na=False)
    assert list(parsed.columns) == TABLE_COLUMNS
    assert parsed.loc[0, "R_used"] == 200
    assert parsed.loc[1, "error"] == "Tail too thin"
    assert parsed.loc[1, "bias_r"] == ""


def test_text_table_layout():
    frame = results_frame(
        [cell(), cell(n=200), cell(alpha=0.99), cell(scenario=ScenarioTag.MIXTURE, error="x")]
    )
    text = to_text_table(frame)
    assert text.splitlines()[0] == "AR(1) phi=(0.5)"
    assert "  alpha = 0.95" in text
    assert "  alpha = 0.99" in text
    assert "    Mixture" in text
    assert "-0.0100" in text
    lines = text.splitlines()
    aborted_row = lines[lines.index("    Mixture") + 2].split()
    assert aborted_row[:3] == ["100", "-", "-"]


def test_empty_frame():
    frame = results_frame([])
    assert frame.empty
    assert list(frame.columns) == TABLE_COLUMNS

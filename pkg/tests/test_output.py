"""Tests for artifact serialization and atomic writes."""

import math

import orjson
import pandas as pd

from innovrisk.schemas.ar import ARModel
from innovrisk.schemas.estimation import RFit, SolverTrace
from innovrisk.schemas.experiment import CellResult, ScenarioTag
from innovrisk.services.output import to_json_bytes, write_atomic, write_frame_csv, write_json


def _fit() -> RFit:
    return RFit(
        slopes=(0.5,),
        dispersion_at_min=1.0,
        dispersion_at_start=1.2,
        solver_trace=SolverTrace(method="pattern", iterations=10, restarts=2, subgradient_gap=0.0),
        lambda_=0.5,
        n_eff=99,
    )


def test_json_uses_aliases_and_ends_with_newline():
    data = to_json_bytes(_fit())
    assert data.endswith(b"\n")
    parsed = orjson.loads(data)
    assert parsed["lambda"] == 0.5
    assert "lambda_" not in parsed
    assert parsed["solver_trace"]["iterations"] == 10


def test_nan_statistics_serialize_as_null():
    nan = float("nan")
    cell = CellResult(
        model=ARModel(phi=(0.5,)),
        scenario=ScenarioTag.NORMAL,
        n=50,
        alpha=0.99,
        bias_r=nan,
        rmse_r=nan,
        bias_oracle=nan,
        rmse_oracle=nan,
        target=2.6652,
        replications_used=0,
        failures=0,
        error="Tail too thin",
    )
    parsed = orjson.loads(to_json_bytes([cell]))
    assert parsed[0]["bias_r"] is None
    assert parsed[0]["scenario"] == "normal"
    assert math.isclose(parsed[0]["target"], 2.6652)


def test_write_atomic_replaces_and_leaves_no_temp_files(tmp_path):
    target = tmp_path / "nested" / "out.txt"
    write_atomic(target, "first")
    write_atomic(target, b"second")
    assert target.read_text() == "second"
    assert sorted(p.name for p in target.parent.iterdir()) == ["out.txt"]


def test_write_json_and_csv(tmp_path):
    path = write_json(tmp_path / "fit.json", {"slopes": [0.5]})
    assert orjson.loads(path.read_bytes()) == {"slopes": [0.5]}
    frame = pd.DataFrame({"date": ["2024-01-01"], "residual": [0.25]})
    csv_path = write_frame_csv(tmp_path / "x.csv", frame)
    assert csv_path.read_text() == "date,residual\n2024-01-01,0.25\n"

"""End-to-end tests of the command-line interface."""

import io

import jsonschema
import orjson
import pandas as pd
import pytest

from innovrisk.main import cli_dispatch
from innovrisk.schemas.report import load_report_schema
from innovrisk.services.rng import RNG_ALGORITHM


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    """Run the CLI with artifacts in tmp_path; returns (exit code, stdout, stderr)."""
    monkeypatch.chdir(tmp_path)

    def invoke(*argv: str, out_dir=None):
        capsys.readouterr()
        code = cli_dispatch(
            ["--out-dir", str(out_dir or tmp_path), "--log-level", "WARNING", *argv]
        )
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_simulate_is_deterministic_per_seed(run, tmp_path):
    for name, seed in (("a", "3"), ("b", "3"), ("c", "4")):
        code, out, _ = run(
            "--seed", seed, "simulate", "--phi", "0.5", "--n", "50", out_dir=tmp_path / name
        )
        assert code == 0
        assert orjson.loads(out)["seed"] == int(seed)
        assert orjson.loads(out)["rng"] == RNG_ALGORITHM
    first = (tmp_path / "a" / "series.csv").read_bytes()
    assert first == (tmp_path / "b" / "series.csv").read_bytes()
    assert first != (tmp_path / "c" / "series.csv").read_bytes()
    frame = pd.read_csv(tmp_path / "a" / "series.csv")
    assert list(frame.columns) == ["t", "value"]
    assert len(frame) == 50


def test_simulate_then_fit_recovers_the_slope(run, tmp_path):
    assert run("--seed", "1", "simulate", "--phi", "0.5", "--n", "2000")[0] == 0
    code, out, _ = run("fit", "--input", str(tmp_path / "series.csv"))
    assert code == 0
    fit = orjson.loads(out)
    assert abs(fit["slopes"][0] - 0.5) < 0.1
    assert fit["lambda"] == 0.5
    assert orjson.loads((tmp_path / "fit.json").read_bytes()) == fit


def test_fit_quantile_method_as_text(run, tmp_path):
    run("--seed", "2", "simulate", "--phi", "0.5", "-0.2", "--n", "600")
    code, out, _ = run(
        "fit", "--input", str(tmp_path / "series.csv"), "--p", "2", "--method", "arq",
        "--alpha", "0.9", "--format", "text",
    )
    assert code == 0
    assert out.startswith("AR quantile alpha=0.9:")


def test_risk_on_residuals(run, write_csv):
    path = write_csv("resid.csv", "value\n" + "\n".join(str(v) for v in range(1, 11)) + "\n")
    code, out, _ = run("risk", "--input", str(path), "--residuals", "--alpha", "0.9")
    assert code == 0
    (report,) = orjson.loads(out)
    assert report["cvar_hat"] == pytest.approx(10.0)
    assert report["var_hat"] == 9.0
    assert report["xi_star"] == 9.0


def test_risk_on_a_series_as_csv(run, tmp_path):
    run("--seed", "5", "simulate", "--phi", "0.8", "--n", "400")
    code, out, _ = run(
        "risk",
        "--input",
        str(tmp_path / "series.csv"),
        "--alpha",
        "0.95",
        "0.99",
        "--format",
        "csv",
    )
    assert code == 0
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame["alpha"]) == [0.95, 0.99]
    assert (frame["cvar_hat"] >= frame["var_hat"]).all()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["fit"], 1),
        (["risk", "--input", "x.csv", "--alpha", "0.5", "--method", "average"], 1),
        (["bench", "--sizes", "1"], 1),
        (["fit", "--input", "missing.csv"], 2),
        (["simulate", "--phi", "1.0", "--n", "10"], 2),
    ],
)
def test_error_exit_codes(run, argv, code):
    exit_code, out, err = run(*argv)
    assert exit_code == code
    assert err.startswith(f"ERROR[{code}]: ")
    assert out == ""


def test_thin_tail_is_a_numerical_error(run, write_csv):
    path = write_csv("resid.csv", "value\n" + "\n".join(str(v) for v in range(1, 11)) + "\n")
    code, _, err = run("risk", "--input", str(path), "--residuals", "--alpha", "0.95")
    assert code == 3
    assert err.startswith("ERROR[3]: Tail too thin")


def test_analyze_writes_report_and_exceedances(run, tmp_path, gauge_file):
    code, out, _ = run("analyze", "--input", str(gauge_file))
    assert code == 0
    report = orjson.loads((tmp_path / "analysis_report.json").read_bytes())
    assert report == orjson.loads(out)
    jsonschema.validate(report, load_report_schema())
    assert report["gauge"] == "synthetic_gauge"
    exceedances = pd.read_csv(tmp_path / "exceedances.csv")
    assert list(exceedances.columns) == ["date", "residual"]
    assert len(exceedances) == 15
    assert list(exceedances["date"]) == report["exceedance_dates"]


def test_bench_small_grid(run, tmp_path):
    code, out, _ = run(
        "bench", "--replications", "3", "--sizes", "100", "--alphas", "0.95",
        "--scenarios", "normal", "--phi", "0.5", "--format", "csv",
    )
    assert code == 0
    frame = pd.read_csv(io.StringIO(out))
    assert len(frame) == 1
    assert frame.loc[0, "R_used"] == 3
    assert frame.loc[0, "rng"] == RNG_ALGORITHM
    assert (tmp_path / "bench.csv").read_text() == out
    assert "alpha = 0.95" in (tmp_path / "bench.txt").read_text()


def test_bench_standard_grid_has_seventy_two_rows(run, tmp_path):
    code, _, _ = run("bench", "--grid", "standard", "--replications", "1", "--format", "text")
    assert code == 0
    frame = pd.read_csv(tmp_path / "bench.csv")
    assert len(frame) == 72
    assert frame.groupby(["model", "scenario", "n", "alpha"]).ngroups == 72


def test_global_flags_before_and_after_command(run, tmp_path):
    run("--seed", "9", "simulate", "--phi", "0.5", "--n", "30", out_dir=tmp_path / "before")
    run("simulate", "--phi", "0.5", "--n", "30", "--seed", "9", out_dir=tmp_path / "after")
    before = (tmp_path / "before" / "series.csv").read_bytes()
    assert before == (tmp_path / "after" / "series.csv").read_bytes()


def test_config_file_feeds_settings(run, tmp_path, write_csv):
    config = write_csv("run.cfg", "output_format=text\nalphas=0.8,0.9\n")
    path = write_csv("resid.csv", "value\n" + "\n".join(str(v) for v in range(1, 11)) + "\n")
    code, out, _ = run("--config", str(config), "risk", "--input", str(path), "--residuals")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["alpha", "VaR", "CVaR", "n_eff"]
    assert [line.split()[0] for line in lines[1:]] == ["0.8", "0.9"]


def test_invalid_config_is_a_usage_error(run, write_csv):
    config = write_csv("bad.cfg", "score_lambda=2\n")
    code, _, err = run("--config", str(config), "risk", "--input", "x.csv", "--residuals")
    assert code == 1
    assert "invalid configuration" in err


def test_paper_grid_is_an_alias_of_the_standard_grid(run, tmp_path):
    restrict = ["--replications", "2", "--sizes", "100", "--alphas", "0.95", "--phi", "0.5"]
    code, _, _ = run("bench", "--grid", "paper", *restrict, out_dir=tmp_path / "paper")
    assert code == 0
    run("bench", "--grid", "standard", *restrict, out_dir=tmp_path / "standard")
    paper = (tmp_path / "paper" / "bench.csv").read_text()
    assert paper == (tmp_path / "standard" / "bench.csv").read_text()
    assert len(pd.read_csv(tmp_path / "paper" / "bench.csv")) == 4

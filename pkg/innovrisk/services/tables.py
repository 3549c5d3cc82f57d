"""
Benchmark tables: CellResult lists as pandas frames, CSV and fixed-width text.
"""

from collections.abc import Sequence

import pandas as pd

from innovrisk.schemas.experiment import SCENARIO_DISPLAY, CellResult

TABLE_COLUMNS = [
    "model",
    "n",
    "scenario",
    "alpha",
    "bias_r",
    "rmse_r",
    "bias_oracle",
    "rmse_oracle",
    "target",
    "R_used",
    "failures",
    "se_bias_r",
    "target_se",
    "error",
    "rng",
]

# Columns of the published tables, in their order
TEXT_COLUMNS = [
    "n",
    "bias_r",
    "rmse_r",
    "bias_oracle",
    "rmse_oracle",
    "target",
    "R_used",
    "failures",
]


def results_frame(results: Sequence[CellResult]) -> pd.DataFrame:
    """
    One row per cell, sorted per model by alpha, scenario name, then n.

    Models keep the order in which they first appear.
    """
    rows = [
        {
            "model": cell.model.label,
            "n": cell.n,
            "scenario": SCENARIO_DISPLAY[cell.scenario],
            "alpha": cell.alpha,
            "bias_r": cell.bias_r,
            "rmse_r": cell.rmse_r,
            "bias_oracle": cell.bias_oracle,
            "rmse_oracle": cell.rmse_oracle,
            "target": cell.target,
            "R_used": cell.replications_used,
            "failures": cell.failures,
            "se_bias_r": cell.se_bias_r,
            "target_se": cell.target_se,
            "error": cell.error or "",
            "rng": cell.rng,
        }
        for cell in results
    ]
    frame = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    if frame.empty:
        return frame
    model_order = {label: i for i, label in enumerate(dict.fromkeys(frame["model"]))}
    frame["_model_rank"] = frame["model"].map(model_order)
    frame = frame.sort_values(["_model_rank", "alpha", "scenario", "n"], kind="stable")
    return frame.drop(columns="_model_rank").reset_index(drop=True)


def to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def to_text_table(frame: pd.DataFrame) -> str:
    """Per model and level, a block of scenario rows in the published layout."""
    blocks: list[str] = []
    for model, by_model in frame.groupby("model", sort=False):
        blocks.append(str(model))
        for alpha, by_alpha in by_model.groupby("alpha", sort=False):
            blocks.append(f"  alpha = {alpha:g}")
            for scenario, rows in by_alpha.groupby("scenario", sort=False):
                body = rows[TEXT_COLUMNS].to_string(
                    index=False,
                    float_format=lambda v: f"{v:.4f}",
                    na_rep="-",
                )
                blocks.append(f"    {scenario}")
                blocks.extend("      " + line for line in body.splitlines())
        blocks.append("")
    return "\n".join(blocks)

"""Code quality: ruff lint checks."""

import shutil
import subprocess
from pathlib import Path

import pytest


@pytest.fixture(scope="module")
def project_root() -> str:
    return str(Path(__file__).parent.parent)


@pytest.mark.skipif(shutil.which("ruff") is None, reason="ruff is not installed")
def test_ruff_check(project_root):
    """Package and tests pass ruff lint checks."""
    result = subprocess.run(
        ["ruff", "check", "innovrisk/", "tests/"],
        cwd=project_root,
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, f"ruff check failed:\n{result.stdout}\n{result.stderr}"

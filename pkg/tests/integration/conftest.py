"""Fixtures for CLI integration tests."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest
from typer.testing import CliRunner

from qhc.cli import app, exit_codes

MakeData = Callable[..., Path]


@pytest.fixture
def make_data(tmp_path: Path) -> MakeData:
    """Write a synthetic CSV through `qhc gen-data` and return its path."""

    def make(
        name: str = "data.csv", n: int = 200, d: int = 4, sep: float = 3.0, seed: int = 1
    ) -> Path:
        path = tmp_path / name
        args = ["gen-data", "--out", str(path), "--n", str(n), "--d", str(d)]
        result = CliRunner().invoke(app, [*args, "--sep", str(sep), "--seed", str(seed)])
        assert result.exit_code == exit_codes.OK, result.output
        return path

    return make


@pytest.fixture
def small_split() -> list[str]:
    """Train/test split flags sized for 200-row files."""
    return ["--train-size", "60", "--n-folds", "3", "--fold-size", "40"]

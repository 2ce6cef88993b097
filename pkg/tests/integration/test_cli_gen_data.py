"""Integration tests for the gen-data CLI command."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pandas as pd
from typer.testing import CliRunner

from qhc.cli import app, exit_codes

runner = CliRunner()


class TestGenDataCommand:
    def test_default_size(self, tmp_path: Path) -> None:
        out = tmp_path / "data.csv"
        result = runner.invoke(app, ["gen-data", "--out", str(out), "--seed", "3"])
        assert result.exit_code == exit_codes.OK
        assert "Wrote 4176 rows x 16 features" in result.output
        lines = out.read_text().splitlines()
        assert len(lines) == 4177
        assert lines[0] == ",".join([*(f"f{j}" for j in range(16)), "label"])

    def test_balanced_labels(self, make_data: Callable[..., Path]) -> None:
        frame = pd.read_csv(make_data(n=100, d=3))
        assert list(frame.columns) == ["f0", "f1", "f2", "label"]
        assert frame["label"].sum() == 50

    def test_same_seed_same_bytes(self, make_data: Callable[..., Path]) -> None:
        first = make_data("a.csv", seed=7)
        second = make_data("b.csv", seed=7)
        other = make_data("c.csv", seed=8)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes() != other.read_bytes()

    def test_seed_from_config(self, tmp_path: Path, make_data: Callable[..., Path]) -> None:
        (tmp_path / ".qhc.yaml").write_text("seed: 7\n")
        out = tmp_path / "from_config.csv"
        args = ["gen-data", "--out", str(out), "--n", "200", "--d", "4", "--sep", "3.0"]
        result = runner.invoke(app, args)
        assert result.exit_code == exit_codes.OK
        assert out.read_bytes() == make_data("explicit.csv", seed=7).read_bytes()

    def test_missing_out_is_usage_error(self) -> None:
        result = runner.invoke(app, ["gen-data"])
        assert result.exit_code == exit_codes.USAGE_ERROR

    def test_odd_rows_rejected(self, tmp_path: Path) -> None:
        out = tmp_path / "data.csv"
        result = runner.invoke(app, ["gen-data", "--out", str(out), "--n", "11"])
        assert result.exit_code == exit_codes.USAGE_ERROR
        assert not out.exists()

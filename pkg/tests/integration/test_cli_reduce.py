"""Integration tests for the reduce CLI command."""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path

import pandas as pd
from typer.testing import CliRunner

from qhc.cli import app, exit_codes

runner = CliRunner()


class TestReduceByAuc:
    def test_keeps_k_columns(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        out = tmp_path / "reduced.csv"
        args = ["reduce", "--data", str(make_data(d=8)), "--out", str(out), "--mode", "auc"]
        result = runner.invoke(app, [*args, "--k", "3"])
        assert result.exit_code == exit_codes.OK, result.output
        assert "Kept 3 of 8 features" in result.output
        frame = pd.read_csv(out)
        assert len(frame.columns) == 4
        assert frame.columns[-1] == "label"
        assert set(frame.columns[:-1]) <= {f"f{j}" for j in range(8)}
        assert len(frame) == 200

    def test_k_too_large(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        out = tmp_path / "reduced.csv"
        args = ["reduce", "--data", str(make_data()), "--out", str(out), "--mode", "auc"]
        result = runner.invoke(app, [*args, "--k", "9"])
        assert result.exit_code == exit_codes.USAGE_ERROR
        assert not out.exists()

    def test_unknown_mode(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        args = ["reduce", "--data", str(make_data()), "--out", str(tmp_path / "r.csv")]
        result = runner.invoke(app, [*args, "--mode", "pca"])
        assert result.exit_code == exit_codes.USAGE_ERROR


class TestReduceByAutoencoder:
    def _args(self, data: Path, out: Path, *extra: str) -> list[str]:
        base = ["reduce", "--data", str(data), "--out", str(out), "--mode", "ae"]
        return [*base, "--epochs", "2", "--batch", "32", *extra]

    def test_writes_latent_codes(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        out = tmp_path / "latent.csv"
        flags = ["--latent", "3", "--hidden", "6"]
        result = runner.invoke(app, self._args(make_data(d=8), out, *flags))
        assert result.exit_code == exit_codes.OK, result.output

        frame = pd.read_csv(out)
        assert list(frame.columns) == ["z0", "z1", "z2", "label"]
        codes = frame[["z0", "z1", "z2"]].to_numpy()
        assert ((codes >= 0.0) & (codes <= 1.0)).all()

        model = json.loads((tmp_path / "ae_model.json").read_text())
        assert model["model_type"] == "autoencoder"
        assert model["layer_sizes"] == [8, 6, 3]
        assert model["best_valid_mse"] <= model["initial_valid_mse"]
        trace = pd.read_csv(tmp_path / "ae_valid_mse.csv")
        assert list(trace.columns) == ["epoch", "valid_mse"]
        assert len(trace) == 2

    def test_labels_carried_over(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        data = make_data(d=8)
        out = tmp_path / "latent.csv"
        runner.invoke(app, self._args(data, out, "--latent", "2"))
        assert pd.read_csv(out)["label"].tolist() == pd.read_csv(data)["label"].tolist()

    def test_model_out(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        model_out = tmp_path / "models" / "ae.json"
        args = self._args(make_data(d=8), tmp_path / "latent.csv", "--latent", "2")
        result = runner.invoke(app, [*args, "--model-out", str(model_out)])
        assert result.exit_code == exit_codes.OK, result.output
        assert model_out.exists()
        assert (tmp_path / "models" / "ae_valid_mse.csv").exists()

    def test_latent_must_shrink(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        out = tmp_path / "latent.csv"
        result = runner.invoke(app, self._args(make_data(d=4), out, "--latent", "4"))
        assert result.exit_code == exit_codes.USAGE_ERROR
        assert not out.exists()

    def test_unknown_preset(self, make_data: Callable[..., Path], tmp_path: Path) -> None:
        out = tmp_path / "latent.csv"
        result = runner.invoke(app, self._args(make_data(d=8), out, "--preset", "keras"))
        assert result.exit_code == exit_codes.USAGE_ERROR

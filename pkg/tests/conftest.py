"""Shared test fixtures."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from qhc.config.schema import RunConfig
from qhc.data.synthetic import gen_synthetic
from qhc.models.dataset import Dataset

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Keep user config files and QHC_* variables out of every test."""
    import os

    for name in list(os.environ):
        if name.startswith("QHC_"):
            monkeypatch.delenv(name)
    monkeypatch.setattr("qhc.config.loader.XDG_CONFIG_PATH", tmp_path / "no-such-config.yaml")
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def fixture_dir() -> Path:
    """Path to the test fixtures directory."""
    return FIXTURES_DIR


@pytest.fixture
def data_dir(fixture_dir: Path) -> Path:
    return fixture_dir / "data"


@pytest.fixture
def small_dataset() -> Dataset:
    """Well separated 4-feature data: 200 rows."""
    return gen_synthetic(200, 4, 3.0, seed=1)


@pytest.fixture
def small_config() -> RunConfig:
    """RunConfig with a split small enough for unit tests."""
    return RunConfig(data={"train_size": 60, "n_folds": 3, "fold_size": 40})

"""Unit tests for CSV I/O, scaling, feature selection, splitting and synthetic data."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from qhc.data.csv_io import load_csv, save_csv
from qhc.data.scaling import CONSTANT_FEATURE_VALUE, apply_minmax, fit_minmax, scale_features
from qhc.data.selection import feature_auc_rank, select_features
from qhc.data.splitting import contiguous_folds, split_folds
from qhc.data.synthetic import gen_synthetic
from qhc.models.dataset import Dataset, MinMaxScaler
from qhc.utils.exceptions import DataError, ParseError, UsageError


class TestLoadCsv:
    def test_reads_features_and_labels(self, data_dir: Path) -> None:
        ds = load_csv(data_dir / "tiny.csv")
        assert ds.feature_names == ("f0", "f1")
        assert ds.n_samples == 4
        np.testing.assert_array_equal(ds.labels, [0, 1, 0, 1])
        assert ds.features[2, 0] == pytest.approx(-0.2)

    def test_label_column_anywhere(self, data_dir: Path) -> None:
        ds = load_csv(data_dir / "label_first.csv")
        assert ds.feature_names == ("a", "b", "c")
        np.testing.assert_array_equal(ds.labels, [1, 0])
        np.testing.assert_array_equal(ds.features[1], [4.0, 5.0, 6.0])

    def test_custom_label_column(self, data_dir: Path) -> None:
        ds = load_csv(data_dir / "no_label.csv", label_column="target")
        assert ds.feature_names == ("f0", "f1")

    @pytest.mark.parametrize(
        ("name", "line"),
        [("bad_value.csv", 3), ("short_row.csv", 3), ("bad_label.csv", 3), ("no_label.csv", 1)],
    )
    def test_parse_errors_name_the_line(self, data_dir: Path, name: str, line: int) -> None:
        with pytest.raises(ParseError) as exc_info:
            load_csv(data_dir / name)
        assert exc_info.value.line == line
        assert str(exc_info.value).startswith(f"line {line}:")

    def test_non_finite_cell(self, tmp_path: Path) -> None:
        path = tmp_path / "inf.csv"
        path.write_text("f0,label\n1.0,0\ninf,1\n")
        with pytest.raises(ParseError) as exc_info:
            load_csv(path)
        assert exc_info.value.line == 3

    def test_every_row_one_field_too_long(self, tmp_path: Path) -> None:
        path = tmp_path / "wide.csv"
        path.write_text("f0,f1,label\n1,2,0,1\n3,4,1,0\n")
        with pytest.raises(ParseError) as exc_info:
            load_csv(path)
        assert exc_info.value.line == 2

    def test_one_long_row(self, tmp_path: Path) -> None:
        path = tmp_path / "ragged.csv"
        path.write_text("f0,f1,label\n1,2,0\n3,4,1\n5,6,1,9\n")
        with pytest.raises(ParseError) as exc_info:
            load_csv(path)
        assert exc_info.value.line == 4

    def test_duplicate_header(self, tmp_path: Path) -> None:
        path = tmp_path / "dup.csv"
        path.write_text("f0,f0,label\n1,2,0\n")
        with pytest.raises(ParseError) as exc_info:
            load_csv(path)
        assert exc_info.value.line == 1

    def test_decimal_text_parses_correctly_rounded(self, tmp_path: Path) -> None:
        path = tmp_path / "digits.csv"
        path.write_text("f0,label\n-0.66958999999999997,0\n0.10000000000000001,1\n")
        ds = load_csv(path)
        assert ds.features[0, 0] == float("-0.66958999999999997")
        assert ds.features[1, 0] == 0.1

    def test_empty_file(self, tmp_path: Path) -> None:
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ParseError):
            load_csv(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(DataError):
            load_csv(tmp_path / "absent.csv")


class TestSaveCsv:
    def test_values_survive_exactly(self, tmp_path: Path) -> None:
        ds = gen_synthetic(20, 3, 1.0, seed=5)
        path = tmp_path / "out" / "data.csv"
        save_csv(ds, path)
        loaded = load_csv(path)
        np.testing.assert_array_equal(loaded.features, ds.features)
        np.testing.assert_array_equal(loaded.labels, ds.labels)
        assert loaded.feature_names == ds.feature_names

    def test_label_written_last(self, data_dir: Path, tmp_path: Path) -> None:
        path = tmp_path / "moved.csv"
        save_csv(load_csv(data_dir / "label_first.csv"), path)
        assert path.read_text().splitlines()[0] == "a,b,c,label"


class TestScaling:
    def test_training_range_maps_to_unit_interval(self) -> None:
        ds = gen_synthetic(50, 3, 1.0, seed=0)
        scaled = apply_minmax(ds, fit_minmax(ds))
        np.testing.assert_allclose(scaled.features.min(axis=0), 0.0)
        np.testing.assert_allclose(scaled.features.max(axis=0), 1.0)
        assert scaled.scaler is not None

    def test_out_of_range_values_clip(self) -> None:
        scaler = MinMaxScaler(np.array([0.0, 10.0]), np.array([2.0, 20.0]))
        out = scale_features(np.array([[-1.0, 15.0], [3.0, 25.0]]), scaler)
        np.testing.assert_allclose(out, [[0.0, 0.5], [1.0, 1.0]])

    def test_constant_feature(self) -> None:
        scaler = MinMaxScaler(np.array([1.0]), np.array([1.0]))
        out = scale_features(np.array([[1.0], [7.0]]), scaler)
        np.testing.assert_array_equal(out, [[CONSTANT_FEATURE_VALUE], [CONSTANT_FEATURE_VALUE]])

    def test_width_mismatch(self) -> None:
        scaler = MinMaxScaler(np.zeros(2), np.ones(2))
        with pytest.raises(UsageError):
            scale_features(np.zeros((1, 3)), scaler)

    def test_unfitted(self) -> None:
        with pytest.raises(UsageError):
            scale_features(np.zeros((1, 2)), None)

    def test_empty_fit(self) -> None:
        ds = gen_synthetic(4, 2, 1.0, seed=0).subset([])
        with pytest.raises(DataError):
            fit_minmax(ds)


class TestSelection:
    def _dataset(self) -> Dataset:
        labels = np.array([0, 0, 0, 1, 1, 1])
        features = np.column_stack(
            [
                [0.5, 0.1, 0.9, 0.4, 0.2, 0.8],  # uninformative
                [1.0, 2.0, 3.0, 4.0, 5.0, 6.0],  # perfect
                [6.0, 5.0, 4.0, 3.0, 2.0, 1.0],  # perfect, reversed
                [1.0, 2.0, 4.0, 3.0, 5.0, 6.0],  # good
            ]
        )
        return Dataset(features, labels, ("noise", "up", "down", "mostly"))

    def test_ranking_uses_max_of_auc_and_complement(self) -> None:
        ranking = feature_auc_rank(self._dataset())
        assert [r.name for r in ranking] == ["up", "down", "mostly", "noise"]
        assert ranking[1].auc == pytest.approx(0.0)
        assert ranking[1].discrimination == pytest.approx(1.0)

    def test_select_keeps_column_order(self) -> None:
        reduced, ranking = select_features(self._dataset(), 3)
        assert reduced.feature_names == ("up", "down", "mostly")
        np.testing.assert_array_equal(reduced.features[:, 1], [6, 5, 4, 3, 2, 1])
        assert len(ranking) == 4

    def test_keeping_every_column_is_identity(self) -> None:
        data = self._dataset()
        reduced, _ = select_features(data, data.n_features)
        assert reduced.feature_names == data.feature_names
        np.testing.assert_array_equal(reduced.features, data.features)

    @pytest.mark.parametrize("k", [0, 5])
    def test_k_out_of_range(self, k: int) -> None:
        with pytest.raises(UsageError):
            select_features(self._dataset(), k)


class TestSplitting:
    def test_disjoint_and_sized(self) -> None:
        ds = gen_synthetic(100, 2, 1.0, seed=0)
        folds = split_folds(ds, 40, 3, 15, seed=1)
        assert folds.train.n_samples == 40
        assert folds.n_folds == 3
        assert all(f.n_samples == 15 for f in folds.test_folds)
        used = np.concatenate([folds.train_indices, *folds.fold_indices])
        assert np.unique(used).size == used.size == 85

    def test_same_seed_same_split(self) -> None:
        ds = gen_synthetic(60, 2, 1.0, seed=0)
        a = split_folds(ds, 20, 2, 10, seed=4)
        b = split_folds(ds, 20, 2, 10, seed=4)
        np.testing.assert_array_equal(a.train_indices, b.train_indices)
        np.testing.assert_array_equal(a.fold_indices[1], b.fold_indices[1])

    def test_rows_follow_indices(self) -> None:
        ds = gen_synthetic(30, 2, 1.0, seed=0)
        folds = split_folds(ds, 10, 2, 5, seed=2)
        np.testing.assert_array_equal(folds.train.features, ds.features[folds.train_indices])

    def test_too_few_rows(self) -> None:
        with pytest.raises(DataError):
            split_folds(gen_synthetic(20, 2, 1.0, seed=0), 10, 2, 6, seed=0)

    def test_non_positive_sizes(self) -> None:
        with pytest.raises(UsageError):
            split_folds(gen_synthetic(20, 2, 1.0, seed=0), 0, 2, 5, seed=0)

    def test_contiguous_folds(self) -> None:
        ds = gen_synthetic(10, 2, 1.0, seed=0)
        folds = contiguous_folds(ds, 3)
        assert [f.n_samples for f in folds] == [4, 3, 3]
        np.testing.assert_array_equal(folds[1].features, ds.features[4:7])
        with pytest.raises(UsageError):
            contiguous_folds(ds, 11)


class TestSynthetic:
    def test_balanced_and_named(self) -> None:
        ds = gen_synthetic(100, 5, 1.5, seed=0)
        assert ds.n_samples == 100
        assert ds.feature_names == ("f0", "f1", "f2", "f3", "f4")
        assert int(ds.labels.sum()) == 50

    def test_deterministic(self) -> None:
        a = gen_synthetic(40, 3, 2.0, seed=8)
        b = gen_synthetic(40, 3, 2.0, seed=8)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_class_means_separated(self) -> None:
        ds = gen_synthetic(20_000, 4, 2.0, seed=1)
        gap = ds.features[ds.labels == 1].mean(axis=0) - ds.features[ds.labels == 0].mean(axis=0)
        assert np.linalg.norm(gap) == pytest.approx(2.0, abs=0.1)

    @pytest.mark.parametrize(
        ("n", "d", "sep"), [(7, 2, 1.0), (0, 2, 1.0), (4, 0, 1.0), (4, 2, -1.0)]
    )
    def test_invalid_arguments(self, n: int, d: int, sep: float) -> None:
        with pytest.raises(UsageError):
            gen_synthetic(n, d, sep, seed=0)

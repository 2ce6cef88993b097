"""Unit tests for training, evaluation and reduction runs."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from qhc.config.schema import AutoencoderConfig, RunConfig
from qhc.data.synthetic import gen_synthetic
from qhc.models.artifacts import SvmArtifact, VqcArtifact
from qhc.models.dataset import Dataset
from qhc.models.enums import ModelKind
from qhc.models.specs import FeatureMapSpec, KernelSpec
from qhc.pipeline.evaluation import evaluate_artifact, evaluation_folds
from qhc.pipeline.persistence import load_model_artifact, save_json
from qhc.pipeline.reduction import reduce_by_auc, reduce_by_autoencoder, resolve_architecture
from qhc.pipeline.training import run_svm, run_vqc
from qhc.utils.exceptions import ArtifactError, ConfigError, DataError

_SPLIT = {"train_size": 60, "n_folds": 3, "fold_size": 40}


def _config(**sections: object) -> RunConfig:
    return RunConfig(data=_SPLIT, **sections)


class TestRunSvm:
    def test_quantum_kernel_run(self, small_dataset: Dataset) -> None:
        config = _config(kernel=KernelSpec.quantum(FeatureMapSpec.amplitude(2)))
        result = run_svm(small_dataset, config, ModelKind.QSVM)
        assert result.model_kind == ModelKind.QSVM
        assert len(result.metrics.summary.per_fold) == 3
        assert result.metrics.fold_sizes == [40, 40, 40]
        assert result.metrics.n_train == 60
        assert result.metrics.C == pytest.approx(1 / (2 * 60 * 0.2))
        assert 0.0 <= result.metrics.summary.mean <= 1.0
        assert isinstance(result.artifact, SvmArtifact)
        assert result.artifact.split is not None
        assert len(result.artifact.training_data) == 60

    def test_classical_rbf_separates(self, small_dataset: Dataset) -> None:
        result = run_svm(small_dataset, _config(kernel=KernelSpec.rbf()), ModelKind.SVM)
        assert result.metrics.summary.mean > 0.9
        assert result.roc.area() == pytest.approx(result.metrics.summary.concatenated_auc)

    def test_metrics_echo_config(self, small_dataset: Dataset) -> None:
        config = _config(kernel=KernelSpec.linear(), seed=5)
        result = run_svm(small_dataset, config, ModelKind.SVM)
        assert result.metrics.config["seed"] == 5
        assert result.metrics.config["data"]["fold_size"] == 40

    def test_lambda_grid_recorded(self, small_dataset: Dataset) -> None:
        config = _config(kernel=KernelSpec.rbf(), svm={"lambda_grid": [0.05, 0.5]})
        result = run_svm(small_dataset, config, ModelKind.SVM)
        assert [s.lambda_ for s in result.metrics.lambda_grid] == [0.05, 0.5]
        assert result.metrics.lambda_ in (0.05, 0.5)

    def test_same_seed_same_result(self, small_dataset: Dataset) -> None:
        config = _config(kernel=KernelSpec.rbf())
        first = run_svm(small_dataset, config, ModelKind.SVM)
        second = run_svm(small_dataset, config, ModelKind.SVM)
        assert first.artifact.model_dump_json() == second.artifact.model_dump_json()
        assert first.metrics.model_dump_json() == second.metrics.model_dump_json()

    def test_kernel_must_match_model_kind(self, small_dataset: Dataset) -> None:
        with pytest.raises(ConfigError):
            run_svm(small_dataset, _config(kernel=KernelSpec.rbf()), ModelKind.QSVM)
        with pytest.raises(ConfigError):
            run_svm(small_dataset, _config(), ModelKind.SVM)

    def test_width_mismatch(self, small_dataset: Dataset) -> None:
        config = _config(kernel=KernelSpec.quantum(FeatureMapSpec.amplitude(3)))
        with pytest.raises(ConfigError):
            run_svm(small_dataset, config, ModelKind.QSVM)

    def test_too_few_rows(self) -> None:
        data = gen_synthetic(100, 4, 2.0, seed=0)
        with pytest.raises(DataError):
            run_svm(data, _config(kernel=KernelSpec.rbf()), ModelKind.SVM)


class TestRunVqc:
    def _data(self) -> Dataset:
        return gen_synthetic(200, 8, 3.0, seed=2)

    def test_run(self) -> None:
        config = _config(vqc={"training": {"epochs": 2, "batch_size": 20}})
        epochs: list[int] = []
        result = run_vqc(self._data(), config, on_epoch=lambda e, _loss: epochs.append(e))
        assert epochs == [1, 2]
        assert len(result.loss_trace) == 2
        assert result.metrics.final_loss == result.loss_trace[-1]
        assert isinstance(result.artifact, VqcArtifact)
        assert len(result.artifact.theta) == 16

    def test_width_mismatch(self, small_dataset: Dataset) -> None:
        with pytest.raises(ConfigError):
            run_vqc(small_dataset, _config())


class TestEvaluation:
    def test_reused_split_reproduces_training(self, small_dataset: Dataset, tmp_path: Path) -> None:
        trained = run_svm(small_dataset, _config(kernel=KernelSpec.rbf()), ModelKind.SVM)
        path = tmp_path / "model.json"
        save_json(trained.artifact, path)
        artifact = load_model_artifact(path)
        folds = evaluation_folds([small_dataset], artifact, reuse_split=True)
        result = evaluate_artifact(artifact, folds)
        assert result.summary.per_fold == trained.metrics.summary.per_fold
        assert result.summary.mean == trained.metrics.summary.mean

    def test_vqc_artifact_reproduces_training(self, tmp_path: Path) -> None:
        data = gen_synthetic(200, 8, 3.0, seed=2)
        config = _config(vqc={"training": {"epochs": 1, "batch_size": 30}})
        trained = run_vqc(data, config)
        path = tmp_path / "vqc.json"
        save_json(trained.artifact, path)
        artifact = load_model_artifact(path)
        result = evaluate_artifact(artifact, evaluation_folds([data], artifact, reuse_split=True))
        assert result.summary.per_fold == pytest.approx(trained.metrics.summary.per_fold, abs=1e-12)

    def test_several_files_are_folds(self, small_dataset: Dataset) -> None:
        trained = run_svm(small_dataset, _config(kernel=KernelSpec.linear()), ModelKind.SVM)
        parts = [small_dataset.subset(np.arange(0, 50)), small_dataset.subset(np.arange(50, 100))]
        folds = evaluation_folds(parts, trained.artifact)
        assert len(folds) == 2
        assert evaluate_artifact(trained.artifact, folds).metrics.fold_sizes == [50, 50]

    def test_contiguous_folds(self, small_dataset: Dataset) -> None:
        trained = run_svm(small_dataset, _config(kernel=KernelSpec.linear()), ModelKind.SVM)
        folds = evaluation_folds([small_dataset], trained.artifact, n_folds=4)
        assert [f.n_samples for f in folds] == [50, 50, 50, 50]

    def test_single_file_needs_fold_count(self, small_dataset: Dataset) -> None:
        trained = run_svm(small_dataset, _config(kernel=KernelSpec.linear()), ModelKind.SVM)
        with pytest.raises(ConfigError):
            evaluation_folds([small_dataset], trained.artifact)

    def test_width_mismatch(self, small_dataset: Dataset) -> None:
        trained = run_svm(small_dataset, _config(kernel=KernelSpec.linear()), ModelKind.SVM)
        other = gen_synthetic(40, 3, 1.0, seed=0)
        with pytest.raises(ConfigError):
            evaluate_artifact(trained.artifact, [other, other])

    def test_unreadable_model(self, tmp_path: Path) -> None:
        path = tmp_path / "model.json"
        path.write_text('{"model_type": "forest"}')
        with pytest.raises(ArtifactError):
            load_model_artifact(path)
        with pytest.raises(ArtifactError):
            load_model_artifact(tmp_path / "absent.json")


class TestReduction:
    def test_auc_reduction(self, small_dataset: Dataset) -> None:
        reduced = reduce_by_auc(small_dataset, 2)
        assert reduced.dataset.n_features == 2
        assert len(reduced.ranking) == 4

    def test_auc_reduction_single_class(self, small_dataset: Dataset) -> None:
        ones = small_dataset.subset(np.flatnonzero(small_dataset.labels == 1))
        with pytest.raises(DataError):
            reduce_by_auc(ones, 2)

    def test_autoencoder_reduction(self) -> None:
        data = gen_synthetic(120, 8, 2.0, seed=3)
        config = AutoencoderConfig(latent_dim=3, hidden_layers=[5], training={"epochs": 3})
        reduced = reduce_by_autoencoder(data, config, seed=0)
        assert reduced.dataset.feature_names == ("z0", "z1", "z2")
        assert np.all((reduced.dataset.features > 0) & (reduced.dataset.features < 1))
        np.testing.assert_array_equal(reduced.dataset.labels, data.labels)
        assert reduced.artifact.layer_sizes == [8, 5, 3]
        assert len(reduced.training.valid_mse) == 3
        assert reduced.artifact.best_valid_mse <= reduced.artifact.initial_valid_mse

    def test_preset_keeps_explicit_settings(self) -> None:
        data = gen_synthetic(60, 20, 2.0, seed=4)
        config = AutoencoderConfig(preset="tensorflow", training={"epochs": 2})
        reduced = reduce_by_autoencoder(data, config, seed=0)
        assert len(reduced.training.valid_mse) == 2
        assert reduced.dataset.n_features == 8

    def test_latent_must_be_smaller(self) -> None:
        with pytest.raises(ConfigError):
            resolve_architecture(AutoencoderConfig(latent_dim=8), 8)

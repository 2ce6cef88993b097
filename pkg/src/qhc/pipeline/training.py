"""Training runs: split, scale, fit, and score every test fold."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from qhc.classifiers.kernels import kernel_matrix
from qhc.classifiers.svm import lambda_grid_search, predict_scores, smo_train
from qhc.classifiers.vqc import predict_proba, vqc_train
from qhc.config.schema import DEFAULT_SVM_TRAIN_SIZE, DEFAULT_VQC_TRAIN_SIZE, RunConfig
from qhc.data.scaling import apply_minmax, fit_minmax
from qhc.data.splitting import split_folds
from qhc.evaluation.metrics import RocCurve, auc_mean_std, roc_curve
from qhc.models.artifacts import LambdaScore, MetricsReport, SplitMeta, SvmArtifact, VqcArtifact
from qhc.models.dataset import Dataset, FoldSet
from qhc.models.enums import KernelKind, ModelKind
from qhc.pipeline.persistence import feature_meta_for, svm_artifact, vqc_artifact
from qhc.utils.exceptions import ConfigError
from qhc.utils.logging import log_timing

logger = logging.getLogger(__name__)


@dataclass
class TrainingResult:
    """Everything a training command writes, computed before anything is written."""

    model_kind: ModelKind
    artifact: SvmArtifact | VqcArtifact
    metrics: MetricsReport
    roc: RocCurve
    loss_trace: list[float] = field(default_factory=list)
    elapsed_s: float = 0.0


def run_svm(
    dataset: Dataset,
    config: RunConfig,
    model_kind: ModelKind = ModelKind.QSVM,
) -> TrainingResult:
    """Train a kernel SVM (quantum for ``qsvm``, classical for ``svm``) and score its folds.

    Raises:
        ConfigError: If the kernel does not suit ``model_kind`` or the data width does
            not match the kernel's feature map. Raised before any training work.
    """
    spec = config.kernel
    is_quantum = spec.kind == KernelKind.QUANTUM_FIDELITY
    if (model_kind == ModelKind.QSVM) != is_quantum:
        raise ConfigError(f"{model_kind} cannot use the {spec.kind} kernel")
    if spec.feature_map is not None and dataset.n_features != spec.feature_map.expected_dim:
        raise ConfigError(
            f"{spec.feature_map.kind} map on {spec.feature_map.n_qubits} qubits expects "
            f"{spec.expected_dim} features, data has {dataset.n_features}"
        )

    started = time.perf_counter()
    folds, train, tests = _prepare(dataset, config, DEFAULT_SVM_TRAIN_SIZE)

    gram = kernel_matrix(train.features, spec, n_jobs=config.n_jobs)
    log_timing("kernel matrix", time.perf_counter() - started, n=train.n_samples)
    y = train.signed_labels()

    svm_config = config.svm
    grid_scores: list[LambdaScore] = []
    if svm_config.lambda_grid:
        grid = lambda_grid_search(gram, y, svm_config.lambda_grid, svm_config, seed=config.seed)
        grid_scores = [LambdaScore(lambda_=lam, auc=a) for lam, a in grid.scores.items()]
        svm_config = svm_config.model_copy(update={"lambda_": grid.best_lambda, "c": None})
        logger.info("Grid search picked lambda=%g", grid.best_lambda)

    model = smo_train(gram, y, svm_config).attach(spec, train.features)
    fold_scores = [(predict_scores(model, f.features), f.labels) for f in tests]
    summary = auc_mean_std(fold_scores)
    roc = _pooled_roc(fold_scores)
    elapsed = time.perf_counter() - started
    log_timing(f"{model_kind} training", elapsed, mean_auc=round(summary.mean, 4))

    lambda_ = None if svm_config.c is not None else svm_config.lambda_
    artifact = svm_artifact(
        model,
        model_kind,
        lambda_,
        feature_meta_for(train),
        _split_meta(folds, config),
        train_config=svm_config,
    )
    metrics = MetricsReport(
        model_type=model_kind.value,
        summary=summary,
        n_train=train.n_samples,
        fold_sizes=[f.n_samples for f in tests],
        C=model.C,
        lambda_=lambda_,
        n_support=model.n_support,
        converged=model.converged,
        lambda_grid=grid_scores,
        config=config.model_dump(mode="json", by_alias=True),
    )
    return TrainingResult(model_kind, artifact, metrics, roc, elapsed_s=elapsed)


def run_vqc(
    dataset: Dataset,
    config: RunConfig,
    on_epoch: Callable[[int, float], None] | None = None,
) -> TrainingResult:
    """Train the re-uploading VQC and score its folds.

    Raises:
        ConfigError: If the data width is not n_uploads x the feature map width.
    """
    vqc = config.vqc
    expected = vqc.n_uploads * vqc.feature_map.expected_dim
    if dataset.n_features != expected:
        raise ConfigError(
            f"VQC with {vqc.n_uploads} uploads of the {vqc.feature_map.kind} map expects "
            f"{expected} features, data has {dataset.n_features}"
        )

    started = time.perf_counter()
    folds, train, tests = _prepare(dataset, config, DEFAULT_VQC_TRAIN_SIZE)
    training = vqc.training
    if training.seed is None:
        training = training.model_copy(update={"seed": config.seed})

    result = vqc_train(
        train,
        training,
        feature_map=vqc.feature_map,
        variational=vqc.variational,
        n_uploads=vqc.n_uploads,
        on_epoch=on_epoch,
    )
    fold_scores = [(predict_proba(result.model, f.features), f.labels) for f in tests]
    summary = auc_mean_std(fold_scores)
    roc = _pooled_roc(fold_scores)
    elapsed = time.perf_counter() - started
    log_timing("vqc training", elapsed, epochs=training.epochs, mean_auc=round(summary.mean, 4))

    artifact = vqc_artifact(
        result.model,
        result.final_loss,
        feature_meta_for(train),
        _split_meta(folds, config),
        train_config=training,
    )
    metrics = MetricsReport(
        model_type=ModelKind.VQC.value,
        summary=summary,
        n_train=train.n_samples,
        fold_sizes=[f.n_samples for f in tests],
        final_loss=result.final_loss,
        config=config.model_dump(mode="json", by_alias=True),
    )
    return TrainingResult(
        ModelKind.VQC, artifact, metrics, roc, loss_trace=result.loss_trace, elapsed_s=elapsed
    )


def _prepare(
    dataset: Dataset, config: RunConfig, default_train_size: int
) -> tuple[FoldSet, Dataset, list[Dataset]]:
    """Split, then scale train and test folds with the training rows' min-max range."""
    train_size = config.data.train_size or default_train_size
    folds = split_folds(
        dataset, train_size, config.data.n_folds, config.data.fold_size, config.seed
    )
    scaler = fit_minmax(folds.train, config.data.feature_range)
    train = apply_minmax(folds.train, scaler)
    tests = [apply_minmax(f, scaler) for f in folds.test_folds]
    return folds, train, tests


def _split_meta(folds: FoldSet, config: RunConfig) -> SplitMeta:
    return SplitMeta(
        train_size=folds.train.n_samples,
        n_folds=folds.n_folds,
        fold_size=config.data.fold_size,
        seed=config.seed,
    )


def _pooled_roc(fold_scores: list[tuple[np.ndarray, np.ndarray]]) -> RocCurve:
    scores = np.concatenate([s for s, _ in fold_scores])
    labels = np.concatenate([y for _, y in fold_scores])
    return roc_curve(scores, labels)

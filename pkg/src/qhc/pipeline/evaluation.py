"""Scoring saved models on new or held-out data."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from qhc.classifiers.svm import predict_scores
from qhc.classifiers.vqc import predict_proba
from qhc.config.schema import RunConfig
from qhc.data.scaling import apply_minmax
from qhc.data.splitting import contiguous_folds, split_folds
from qhc.evaluation.metrics import AucSummary, RocCurve, auc_mean_std, roc_curve
from qhc.models.artifacts import MetricsReport, SvmArtifact, VqcArtifact
from qhc.models.dataset import Dataset
from qhc.pipeline.persistence import scaler_from_meta, svm_from_artifact, vqc_from_artifact
from qhc.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)


@dataclass
class EvaluationResult:
    summary: AucSummary
    roc: RocCurve
    metrics: MetricsReport


def evaluation_folds(
    datasets: Sequence[Dataset],
    artifact: SvmArtifact | VqcArtifact,
    n_folds: int | None = None,
    reuse_split: bool = False,
) -> list[Dataset]:
    """Test folds to score.

    Several files are one fold each. A single file is either re-split exactly as the
    training run did (``reuse_split``) or cut into ``n_folds`` consecutive folds.

    Raises:
        ConfigError: If the split cannot be reproduced or fewer than two folds result.
    """
    if len(datasets) > 1:
        return list(datasets)
    (dataset,) = datasets
    if reuse_split:
        split = artifact.split
        if split is None:
            raise ConfigError("model file records no training split to reuse")
        return list(
            split_folds(dataset, split.train_size, split.n_folds, split.fold_size, split.seed)
            .test_folds
        )
    if n_folds is None or n_folds < 2:
        raise ConfigError("a single data file needs --n-folds >= 2 or --reuse-split")
    return contiguous_folds(dataset, n_folds)


def evaluate_artifact(
    artifact: SvmArtifact | VqcArtifact,
    folds: Sequence[Dataset],
    config: RunConfig | None = None,
) -> EvaluationResult:
    """Rescale each fold with the model's stored scaler and summarise its AUCs.

    The report echoes ``config`` (defaults when omitted) and the model's own training
    settings.

    Raises:
        ConfigError: If a fold's columns differ from those the model was trained on.
    """
    meta = artifact.feature_meta
    scaler = scaler_from_meta(meta)
    for k, fold in enumerate(folds):
        if fold.n_features != len(meta.names):
            raise ConfigError(
                f"fold {k} has {fold.n_features} features, model expects {len(meta.names)}"
            )
        if list(fold.feature_names) != meta.names:
            logger.warning("fold %d column names differ from the training columns", k)

    scaled = [apply_minmax(f, scaler) for f in folds]
    if isinstance(artifact, SvmArtifact):
        svm = svm_from_artifact(artifact)
        fold_scores = [(predict_scores(svm, f.features), f.labels) for f in scaled]
    else:
        vqc = vqc_from_artifact(artifact)
        fold_scores = [(predict_proba(vqc, f.features), f.labels) for f in scaled]

    summary = auc_mean_std(fold_scores)
    roc = roc_curve(
        np.concatenate([s for s, _ in fold_scores]), np.concatenate([y for _, y in fold_scores])
    )
    metrics = MetricsReport(
        model_type=artifact.model_type,
        summary=summary,
        fold_sizes=[f.n_samples for f in folds],
        C=artifact.C if isinstance(artifact, SvmArtifact) else None,
        lambda_=artifact.lambda_ if isinstance(artifact, SvmArtifact) else None,
        config=_config_echo(artifact, config if config is not None else RunConfig()),
    )
    logger.info("Evaluated %d folds: mean AUC %.4f", len(folds), summary.mean)
    return EvaluationResult(summary=summary, roc=roc, metrics=metrics)


def _config_echo(artifact: SvmArtifact | VqcArtifact, config: RunConfig) -> dict[str, Any]:
    echo = config.model_dump(mode="json", by_alias=True)
    if artifact.train_config is not None:
        echo["model_train_config"] = artifact.train_config.model_dump(mode="json", by_alias=True)
    return echo

"""Conversion between trained models and their JSON/CSV artifacts."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, TypeAdapter, ValidationError

from qhc.classifiers.svm import SvmModel
from qhc.classifiers.vqc import VqcModel
from qhc.config.schema import SvmConfig, TrainConfig
from qhc.evaluation.metrics import RocCurve
from qhc.models.artifacts import (
    AeArtifact,
    FeatureMeta,
    ModelArtifact,
    SplitMeta,
    SvmArtifact,
    VqcArtifact,
)
from qhc.models.dataset import Dataset, MinMaxScaler
from qhc.models.enums import ModelKind
from qhc.reduction.autoencoder import AeTrainResult
from qhc.utils.exceptions import ArtifactError, UsageError
from qhc.utils.io import atomic_write, write_text

logger = logging.getLogger(__name__)

_FLOAT_FORMAT = "%.17g"
_MODEL_ADAPTER: TypeAdapter[SvmArtifact | VqcArtifact] = TypeAdapter(ModelArtifact)


def feature_meta_for(dataset: Dataset) -> FeatureMeta:
    """Column names and scaler of an already-scaled dataset."""
    if dataset.scaler is None:
        raise UsageError("dataset carries no fitted scaler")
    return FeatureMeta(
        names=list(dataset.feature_names),
        label_column=dataset.label_column,
        mins=dataset.scaler.mins.tolist(),
        maxs=dataset.scaler.maxs.tolist(),
        feature_range=(dataset.scaler.low, dataset.scaler.high),
    )


def scaler_from_meta(meta: FeatureMeta) -> MinMaxScaler:
    low, high = meta.feature_range
    return MinMaxScaler(np.asarray(meta.mins), np.asarray(meta.maxs), low, high)


def svm_artifact(
    model: SvmModel,
    model_type: ModelKind,
    lambda_: float | None,
    feature_meta: FeatureMeta,
    split: SplitMeta | None,
    train_config: SvmConfig | None = None,
) -> SvmArtifact:
    if model.kernel_spec is None or model.training_data is None:
        raise UsageError("model has no kernel or training data attached")
    return SvmArtifact(
        model_type=model_type.value,
        kernel=model.kernel_spec,
        C=model.C,
        lambda_=lambda_,
        bias=model.bias,
        coefficients=model.coefficients.tolist(),
        labels=model.labels.tolist(),
        converged=model.converged,
        training_data=model.training_data.tolist(),
        feature_meta=feature_meta,
        split=split,
        train_config=train_config,
    )


def svm_from_artifact(artifact: SvmArtifact) -> SvmModel:
    model = SvmModel(
        coefficients=np.asarray(artifact.coefficients, dtype=np.float64),
        labels=np.asarray(artifact.labels, dtype=np.float64),
        bias=artifact.bias,
        C=artifact.C,
        converged=artifact.converged,
    )
    return model.attach(artifact.kernel, np.asarray(artifact.training_data, dtype=np.float64))


def vqc_artifact(
    model: VqcModel,
    final_loss: float | None,
    feature_meta: FeatureMeta,
    split: SplitMeta | None,
    train_config: TrainConfig | None = None,
) -> VqcArtifact:
    return VqcArtifact(
        theta=model.theta.tolist(),
        feature_map=model.feature_map,
        variational=model.variational,
        n_uploads=model.n_uploads,
        final_loss=final_loss,
        feature_meta=feature_meta,
        split=split,
        train_config=train_config,
    )


def vqc_from_artifact(artifact: VqcArtifact) -> VqcModel:
    return VqcModel(
        theta=np.asarray(artifact.theta, dtype=np.float64),
        feature_map=artifact.feature_map,
        variational=artifact.variational,
        n_uploads=artifact.n_uploads,
    )


def ae_artifact(result: AeTrainResult, feature_meta: FeatureMeta) -> AeArtifact:
    model = result.model
    return AeArtifact(
        layer_sizes=list(model.architecture.layer_sizes),
        weights=[w.tolist() for w in model.weights],
        biases=[b.tolist() for b in model.biases],
        best_epoch=result.best_epoch,
        initial_valid_mse=result.initial_valid_mse,
        best_valid_mse=min([result.initial_valid_mse, *result.valid_mse]),
        test_mse=result.test_mse,
        feature_meta=feature_meta,
    )


def save_json(document: BaseModel, path: str | Path) -> None:
    write_text(path, document.model_dump_json(indent=2, by_alias=True) + "\n")
    logger.debug("Wrote %s", path)


def load_model_artifact(path: str | Path) -> SvmArtifact | VqcArtifact:
    """Read a classifier model JSON of any type.

    Raises:
        ArtifactError: If the file is missing or not a valid model document.
    """
    source = Path(path)
    try:
        text = source.read_text()
    except OSError as e:
        raise ArtifactError(f"Cannot read {source}: {e}") from e
    try:
        return _MODEL_ADAPTER.validate_json(text)
    except ValidationError as e:
        raise ArtifactError(f"{source} is not a valid model file: {e}") from e


def write_roc_csv(curve: RocCurve, path: str | Path) -> None:
    _write_frame(pd.DataFrame({"fpr": curve.fpr, "tpr": curve.tpr}), path)


def write_series_csv(
    values: Sequence[float], path: str | Path, index_name: str, value_name: str
) -> None:
    """Two-column CSV numbering ``values`` from 1."""
    frame = pd.DataFrame(
        {index_name: np.arange(1, len(values) + 1), value_name: np.asarray(values, dtype=float)}
    )
    _write_frame(frame, path)


def write_matrix_csv(matrix: np.ndarray, path: str | Path) -> None:
    """Headerless square matrix."""
    with atomic_write(path) as handle:
        pd.DataFrame(matrix).to_csv(
            handle, index=False, header=False, float_format=_FLOAT_FORMAT, lineterminator="\n"
        )


def _write_frame(frame: pd.DataFrame, path: str | Path) -> None:
    with atomic_write(path) as handle:
        frame.to_csv(handle, index=False, float_format=_FLOAT_FORMAT, lineterminator="\n")

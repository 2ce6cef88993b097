"""Feature reduction runs: AUC-based column selection or autoencoder latent codes."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass

from qhc.config.schema import AutoencoderConfig
from qhc.data.scaling import apply_minmax, fit_minmax
from qhc.data.selection import FeatureRank, select_features
from qhc.models.artifacts import AeArtifact
from qhc.models.dataset import Dataset
from qhc.pipeline.persistence import ae_artifact, feature_meta_for
from qhc.reduction.autoencoder import (
    AeArchitecture,
    AeTrainResult,
    ae_train,
    encode_latent,
    preset_architecture,
    preset_train_config,
)
from qhc.utils.exceptions import ConfigError, DataError
from qhc.utils.logging import log_timing

logger = logging.getLogger(__name__)


@dataclass
class AucReduction:
    dataset: Dataset
    ranking: list[FeatureRank]


@dataclass
class AeReduction:
    dataset: Dataset
    training: AeTrainResult
    artifact: AeArtifact
    elapsed_s: float


def reduce_by_auc(dataset: Dataset, k: int) -> AucReduction:
    """Keep the ``k`` columns with the best single-feature AUC."""
    if not dataset.has_both_classes:
        raise DataError("feature ranking needs both classes present")
    reduced, ranking = select_features(dataset, k)
    return AucReduction(dataset=reduced, ranking=ranking)


def resolve_architecture(config: AutoencoderConfig, input_dim: int) -> AeArchitecture:
    """Preset shape if one is named, otherwise the configured hidden and latent sizes."""
    if config.preset:
        return preset_architecture(config.preset, input_dim)
    if config.latent_dim >= input_dim:
        raise ConfigError(f"latent size {config.latent_dim} must be below input size {input_dim}")
    return AeArchitecture.from_hidden(input_dim, list(config.hidden_layers), config.latent_dim)


def reduce_by_autoencoder(
    dataset: Dataset,
    config: AutoencoderConfig,
    seed: int,
    on_epoch: Callable[[int, float], None] | None = None,
) -> AeReduction:
    """Scale to [0, 1], train an autoencoder, and replace features with latent codes.

    With a preset, its training settings apply except where the config sets them.
    """
    architecture = resolve_architecture(config, dataset.n_features)
    training = config.training
    if config.preset:
        explicit = {name: getattr(training, name) for name in training.model_fields_set}
        training = preset_train_config(config.preset).model_copy(update=explicit)
    if training.seed is None:
        training = training.model_copy(update={"seed": seed})

    started = time.perf_counter()
    scaled = apply_minmax(dataset, fit_minmax(dataset))
    result = ae_train(scaled.features, architecture, training, on_epoch=on_epoch)
    latent = encode_latent(scaled.features, result.model)
    elapsed = time.perf_counter() - started
    log_timing("autoencoder training", elapsed, epochs=training.epochs)

    reduced = dataset.with_features(
        latent, feature_names=[f"z{j}" for j in range(architecture.latent_dim)]
    )
    return AeReduction(
        dataset=reduced,
        training=result,
        artifact=ae_artifact(result, feature_meta_for(scaled)),
        elapsed_s=elapsed,
    )

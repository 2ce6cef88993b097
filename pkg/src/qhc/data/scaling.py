"""Min-max feature scaling fitted on training rows only."""

from __future__ import annotations

import numpy as np

from qhc.models.dataset import Dataset, MinMaxScaler
from qhc.utils.exceptions import DataError, UsageError

# Position inside the target range given to a feature that is constant on the training set
CONSTANT_FEATURE_VALUE = 0.5


def fit_minmax(
    train: Dataset, feature_range: tuple[float, float] = (0.0, 1.0)
) -> MinMaxScaler:
    """Per-feature minima and maxima of ``train``, mapped onto ``feature_range``."""
    if train.n_samples == 0:
        raise DataError("cannot fit a scaler on an empty dataset")
    low, high = feature_range
    return MinMaxScaler(train.features.min(axis=0), train.features.max(axis=0), low, high)


def scale_features(features: np.ndarray, scaler: MinMaxScaler | None) -> np.ndarray:
    """Map each column onto the scaler's range; values outside the fitted range are clipped."""
    if scaler is None:
        raise UsageError("scaler has not been fitted")
    values = np.asarray(features, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] != scaler.n_features:
        raise UsageError(
            f"scaler was fitted on {scaler.n_features} features, got shape {values.shape}"
        )
    span = scaler.maxs - scaler.mins
    constant = span <= 0
    safe_span = np.where(constant, 1.0, span)
    unit = np.clip((values - scaler.mins) / safe_span, 0.0, 1.0)
    unit[:, constant] = CONSTANT_FEATURE_VALUE
    return scaler.low + (scaler.high - scaler.low) * unit


def apply_minmax(dataset: Dataset, scaler: MinMaxScaler | None) -> Dataset:
    """Scaled copy of ``dataset`` that remembers ``scaler``."""
    return dataset.with_features(scale_features(dataset.features, scaler), scaler=scaler)

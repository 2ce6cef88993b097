"""In-memory labelled datasets, fold splits, and min-max scalers."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from qhc.utils.exceptions import DataError, UsageError


@dataclass(frozen=True, eq=False)
class MinMaxScaler:
    """Per-feature minima and maxima fitted on a training set.

    Fitted values map onto ``[low, high]``, a sub-interval of [0, 1].
    """

    mins: np.ndarray
    maxs: np.ndarray
    low: float = 0.0
    high: float = 1.0

    def __post_init__(self) -> None:
        mins = np.asarray(self.mins, dtype=np.float64)
        maxs = np.asarray(self.maxs, dtype=np.float64)
        if mins.ndim != 1 or mins.shape != maxs.shape:
            raise UsageError(f"scaler bounds differ in shape: {mins.shape} vs {maxs.shape}")
        if not 0.0 <= self.low < self.high <= 1.0:
            raise UsageError(f"scaler range [{self.low}, {self.high}] is not inside [0, 1]")
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "maxs", maxs)

    @property
    def n_features(self) -> int:
        return int(self.mins.size)

    def subset(self, columns: Sequence[int]) -> MinMaxScaler:
        idx = list(columns)
        return MinMaxScaler(self.mins[idx], self.maxs[idx], self.low, self.high)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix with 0/1 labels and named columns.

    ``scaler`` records the min-max transform that produced ``features``, if any.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    label_column: str = "label"
    scaler: MinMaxScaler | None = None

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels).astype(np.int64)
        if features.ndim != 2:
            raise DataError(f"features must be a matrix, got shape {features.shape}")
        if labels.shape != (features.shape[0],):
            raise DataError(f"{features.shape[0]} rows but {labels.shape} labels")
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise DataError("labels must be 0 or 1")
        names = tuple(self.feature_names)
        if len(names) != features.shape[1]:
            raise DataError(f"{features.shape[1]} feature columns but {len(names)} names")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    @property
    def has_both_classes(self) -> bool:
        return bool(np.any(self.labels == 0) and np.any(self.labels == 1))

    def signed_labels(self) -> np.ndarray:
        """Labels mapped 1 -> +1 and 0 -> -1."""
        return 2.0 * self.labels - 1.0

    def subset(self, rows: Sequence[int] | np.ndarray) -> Dataset:
        idx = np.asarray(rows, dtype=np.int64)
        return replace(self, features=self.features[idx], labels=self.labels[idx])

    def select_columns(self, columns: Sequence[int]) -> Dataset:
        idx = list(columns)
        return replace(
            self,
            features=self.features[:, idx],
            feature_names=tuple(self.feature_names[i] for i in idx),
            scaler=self.scaler.subset(idx) if self.scaler is not None else None,
        )

    def with_features(
        self,
        features: np.ndarray,
        feature_names: Sequence[str] | None = None,
        scaler: MinMaxScaler | None = None,
    ) -> Dataset:
        names = tuple(feature_names) if feature_names is not None else self.feature_names
        return replace(self, features=features, feature_names=names, scaler=scaler)


@dataclass(frozen=True, eq=False)
class FoldSet:
    """A training set and disjoint test folds drawn from one shuffled dataset."""

    train: Dataset
    test_folds: tuple[Dataset, ...]
    train_indices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    fold_indices: tuple[np.ndarray, ...] = ()

    @property
    def n_folds(self) -> int:
        return len(self.test_folds)

"""Seeded train / test-fold partitioning."""

from __future__ import annotations

import logging

import numpy as np

from qhc.models.dataset import Dataset, FoldSet
from qhc.utils.exceptions import DataError, UsageError

logger = logging.getLogger(__name__)


def split_folds(
    dataset: Dataset,
    train_size: int,
    n_folds: int,
    fold_size: int,
    seed: int,
) -> FoldSet:
    """Shuffle rows once, take ``train_size`` for training and ``n_folds`` consecutive
    blocks of ``fold_size`` for testing. Leftover rows are unused.

    Raises:
        UsageError: On non-positive sizes.
        DataError: If the dataset is too small for the requested split.
    """
    if train_size < 1 or n_folds < 1 or fold_size < 1:
        raise UsageError(
            f"train_size, n_folds, fold_size must be positive, "
            f"got {train_size}, {n_folds}, {fold_size}"
        )
    needed = train_size + n_folds * fold_size
    if needed > dataset.n_samples:
        raise DataError(
            f"split needs {needed} rows ({train_size} + {n_folds}x{fold_size}) "
            f"but the dataset has {dataset.n_samples}"
        )

    order = np.random.default_rng(seed).permutation(dataset.n_samples)
    train_idx = order[:train_size]
    fold_idx = tuple(
        order[train_size + k * fold_size : train_size + (k + 1) * fold_size]
        for k in range(n_folds)
    )
    logger.debug(
        "Split %d rows: train=%d, %d folds of %d, %d unused",
        dataset.n_samples,
        train_size,
        n_folds,
        fold_size,
        dataset.n_samples - needed,
    )
    return FoldSet(
        train=dataset.subset(train_idx),
        test_folds=tuple(dataset.subset(idx) for idx in fold_idx),
        train_indices=train_idx,
        fold_indices=fold_idx,
    )


def contiguous_folds(dataset: Dataset, n_folds: int) -> list[Dataset]:
    """Cut a dataset into ``n_folds`` consecutive, nearly equal folds."""
    if not 1 <= n_folds <= dataset.n_samples:
        raise UsageError(f"cannot cut {dataset.n_samples} rows into {n_folds} folds")
    return [dataset.subset(idx) for idx in np.array_split(np.arange(dataset.n_samples), n_folds)]

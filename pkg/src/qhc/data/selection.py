"""Single-feature AUC ranking for picking the most discriminating columns."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from qhc.evaluation.metrics import auc
from qhc.models.dataset import Dataset
from qhc.utils.exceptions import UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureRank:
    """One column's AUC when used alone as a score."""

    index: int
    name: str
    auc: float

    @property
    def discrimination(self) -> float:
        """max(A, 1 - A): a feature that orders the classes backwards is as useful."""
        return max(self.auc, 1.0 - self.auc)


def feature_auc_rank(dataset: Dataset) -> list[FeatureRank]:
    """All columns sorted by discrimination, best first; ties keep column order."""
    ranks = [
        FeatureRank(j, dataset.feature_names[j], auc(dataset.features[:, j], dataset.labels))
        for j in range(dataset.n_features)
    ]
    return sorted(ranks, key=lambda r: (-r.discrimination, r.index))


def select_features(dataset: Dataset, k: int) -> tuple[Dataset, list[FeatureRank]]:
    """Keep the ``k`` best columns in their original order.

    Raises:
        UsageError: If ``k`` is outside 1..n_features.
    """
    if not 1 <= k <= dataset.n_features:
        raise UsageError(f"k must be in [1, {dataset.n_features}], got {k}")
    ranking = feature_auc_rank(dataset)
    kept = ranking[:k]
    logger.info("Selected %d of %d features by single-feature AUC", k, dataset.n_features)
    return dataset.select_columns(sorted(r.index for r in kept)), ranking

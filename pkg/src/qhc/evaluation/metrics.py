"""ROC AUC and fold summaries."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel
from scipy.stats import rankdata

from qhc.utils.exceptions import DataError, UsageError

logger = logging.getLogger(__name__)


def auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Probability that a random positive outscores a random negative; ties count half.

    Raises:
        UsageError: If lengths differ or labels are not 0/1.
        DataError: If only one class is present or a score is not finite.
    """
    s, y = _check_inputs(scores, labels)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    ranks = rankdata(s, method="average")
    u_stat = float(ranks[y == 1].sum()) - n_pos * (n_pos + 1) / 2.0
    return u_stat / (n_pos * n_neg)


@dataclass(frozen=True, eq=False)
class RocCurve:
    """ROC points from (0, 0) to (1, 1), one per distinct score threshold."""

    fpr: np.ndarray
    tpr: np.ndarray

    def area(self) -> float:
        """Trapezoidal area under the curve."""
        return float(np.sum(np.diff(self.fpr) * (self.tpr[1:] + self.tpr[:-1]) / 2.0))

    def points(self) -> list[tuple[float, float]]:
        return [(float(f), float(t)) for f, t in zip(self.fpr, self.tpr, strict=True)]


def roc_curve(scores: np.ndarray, labels: np.ndarray) -> RocCurve:
    """Sweep thresholds from high to low; tied scores move together."""
    s, y = _check_inputs(scores, labels)
    order = np.argsort(-s, kind="mergesort")
    s_sorted = s[order]
    y_sorted = y[order]
    # Last position of each run of equal scores
    ends = np.flatnonzero(np.diff(s_sorted) != 0)
    ends = np.append(ends, s_sorted.size - 1)
    tps = np.cumsum(y_sorted)[ends]
    fps = (ends + 1) - tps
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    fpr = np.concatenate(([0.0], fps / n_neg))
    tpr = np.concatenate(([0.0], tps / n_pos))
    return RocCurve(fpr=fpr, tpr=tpr)


class AucSummary(BaseModel):
    """Per-fold AUCs, their mean and population std, and the AUC of all folds pooled."""

    per_fold: list[float]
    mean: float
    std: float
    concatenated_auc: float


def auc_mean_std(folds: Sequence[tuple[np.ndarray, np.ndarray]]) -> AucSummary:
    """Summarise (scores, labels) pairs, one per test fold.

    Raises:
        UsageError: With fewer than two folds.
        DataError: If a fold holds a single class; the message names the fold.
    """
    if len(folds) < 2:
        raise UsageError(f"need at least 2 folds, got {len(folds)}")
    per_fold = []
    for k, (scores, labels) in enumerate(folds):
        try:
            per_fold.append(auc(scores, labels))
        except DataError as e:
            raise DataError(f"fold {k}: {e}") from e
    pooled_scores = np.concatenate([np.asarray(s, dtype=np.float64) for s, _ in folds])
    pooled_labels = np.concatenate([np.asarray(y) for _, y in folds])
    values = np.asarray(per_fold)
    summary = AucSummary(
        per_fold=per_fold,
        mean=float(values.mean()),
        std=float(values.std()),
        concatenated_auc=auc(pooled_scores, pooled_labels),
    )
    logger.debug("AUC per fold: %s", ", ".join(f"{a:.4f}" for a in per_fold))
    return summary


def _check_inputs(scores: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(labels).ravel()
    if s.size != y.size:
        raise UsageError(f"{s.size} scores but {y.size} labels")
    if y.size and not np.isin(y, (0, 1)).all():
        raise UsageError("labels must be 0 or 1")
    y = y.astype(np.int64)
    if not np.isfinite(s).all():
        raise DataError("scores must be finite")
    if not (np.any(y == 1) and np.any(y == 0)):
        raise DataError("AUC needs both classes present")
    return s, y

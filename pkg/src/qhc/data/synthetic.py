"""Seeded two-class Gaussian data for smoke tests and demos."""

from __future__ import annotations

import logging

import numpy as np

from qhc.models.dataset import Dataset
from qhc.utils.exceptions import UsageError

logger = logging.getLogger(__name__)


def gen_synthetic(n: int, d: int, separation: float, seed: int) -> Dataset:
    """Balanced classes drawn from unit Gaussians whose means sit ``separation`` apart.

    Class means are +-(separation/2) along the all-ones direction, so ``separation`` is
    the Euclidean distance between them. Rows are shuffled.

    Raises:
        UsageError: If ``n`` is odd or below 2, ``d`` < 1, or ``separation`` < 0.
    """
    if n < 2 or n % 2:
        raise UsageError(f"n must be an even number >= 2, got {n}")
    if d < 1:
        raise UsageError(f"d must be >= 1, got {d}")
    if not separation >= 0:
        raise UsageError(f"separation must be >= 0, got {separation}")

    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.repeat(np.array([1, 0], dtype=np.int64), n // 2))
    direction = np.full(d, 1.0 / np.sqrt(d))
    signs = 2.0 * labels - 1.0
    features = rng.standard_normal((n, d)) + (separation / 2.0) * signs[:, None] * direction

    logger.debug("Generated %d x %d synthetic rows (separation=%g)", n, d, separation)
    return Dataset(
        features=features,
        labels=labels,
        feature_names=tuple(f"f{j}" for j in range(d)),
    )

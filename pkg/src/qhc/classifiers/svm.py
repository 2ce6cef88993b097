"""Soft-margin kernel SVM trained in the dual with sequential minimal optimisation.

The dual problem is

    max  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
    s.t. 0 <= a_i <= C,  sum_i a_i y_i = 0

with the box constant C = 1/(2 n lambda) for a regularisation strength lambda.
Each step updates the pair of multipliers that most violates the optimality
conditions, which keeps the dual objective non-decreasing.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from qhc.classifiers.kernels import KernelMatrix, kernel_cross
from qhc.config.schema import SvmConfig
from qhc.evaluation.metrics import auc
from qhc.models.specs import KernelSpec
from qhc.utils.exceptions import DataError, TrainingError, UsageError

logger = logging.getLogger(__name__)

# Multipliers above this count as support vectors
SUPPORT_THRESHOLD = 1e-9
# Pairs whose curvature eta falls below this are skipped
MIN_CURVATURE = 1e-12
_SYMMETRY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SvmModel:
    """Trained dual coefficients and bias.

    ``kernel_spec`` and ``training_data`` are attached after training so that new points
    can be scored.
    """

    coefficients: np.ndarray
    labels: np.ndarray
    bias: float
    C: float
    converged: bool = True
    n_iterations: int = 0
    kernel_spec: KernelSpec | None = None
    training_data: np.ndarray | None = None

    @property
    def support_indices(self) -> np.ndarray:
        return np.flatnonzero(self.coefficients > SUPPORT_THRESHOLD)

    @property
    def n_support(self) -> int:
        return int(self.support_indices.size)

    def attach(self, kernel_spec: KernelSpec, training_data: np.ndarray) -> SvmModel:
        data = np.asarray(training_data, dtype=np.float64)
        if data.shape[0] != self.coefficients.size:
            raise UsageError(
                f"model has {self.coefficients.size} coefficients but {data.shape[0]} rows"
            )
        return replace(self, kernel_spec=kernel_spec, training_data=data)


@dataclass
class GridSearchResult:
    """Out-of-fold AUC for each candidate lambda."""

    best_lambda: float
    scores: dict[float, float] = field(default_factory=dict)


def to_signed_labels(labels: np.ndarray) -> np.ndarray:
    """Map 0/1 labels to -1/+1; -1/+1 labels pass through."""
    y = np.asarray(labels, dtype=np.float64)
    if np.isin(y, (0.0, 1.0)).all():
        return 2.0 * y - 1.0
    if np.isin(y, (-1.0, 1.0)).all():
        return y
    raise UsageError("labels must be 0/1 or -1/+1")


def dual_objective(alpha: np.ndarray, y: np.ndarray, K: np.ndarray) -> float:
    ay = alpha * y
    return float(alpha.sum() - 0.5 * ay @ K @ ay)


def kkt_violation(model: SvmModel, K: KernelMatrix | np.ndarray) -> float:
    """Largest breach of the optimality conditions y_i f(x_i) vs 1 over training points.

    Zero multipliers need y f >= 1, multipliers at C need y f <= 1, and free ones y f = 1.
    """
    Kv = _values(K)
    alpha = model.coefficients
    y = model.labels
    margins = y * (Kv @ (alpha * y) + model.bias) - 1.0
    at_zero = alpha <= 0.0
    at_bound = alpha >= model.C
    free = ~at_zero & ~at_bound
    worst = 0.0
    if at_zero.any():
        worst = max(worst, float(np.max(-margins[at_zero])))
    if at_bound.any():
        worst = max(worst, float(np.max(margins[at_bound])))
    if free.any():
        worst = max(worst, float(np.max(np.abs(margins[free]))))
    return max(worst, 0.0)


def smo_train(
    K: KernelMatrix | np.ndarray,
    labels: np.ndarray,
    config: SvmConfig,
    on_update: Callable[[np.ndarray], None] | None = None,
) -> SvmModel:
    """Solve the dual SVM on a precomputed Gram matrix.

    Args:
        K: Symmetric n x n Gram matrix.
        labels: -1/+1 (or 0/1) labels, one per row of ``K``.
        config: Regularisation, tolerance, and sweep limit.
        on_update: Called with a copy of the multipliers after every pair update.

    Returns:
        SvmModel without kernel or training data attached. ``converged`` is False when
        the sweep limit was hit first.

    Raises:
        UsageError: If ``K`` is not square and symmetric or labels do not match it.
        DataError: If ``K`` holds non-finite values.
        TrainingError: If only one class is present.
    """
    Kv = _values(K)
    n = Kv.shape[0]
    y = to_signed_labels(labels)
    if y.shape != (n,):
        raise UsageError(f"{n}x{n} Gram matrix but {y.size} labels")
    if not np.isfinite(Kv).all():
        raise DataError("Gram matrix holds non-finite values")
    if n and not np.allclose(Kv, Kv.T, rtol=0.0, atol=_SYMMETRY_TOL * max(1.0, np.abs(Kv).max())):
        raise UsageError("Gram matrix is not symmetric")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise TrainingError("SVM training needs both classes present")

    C = config.box_constant(n)
    alpha = np.zeros(n)
    # u_k = sum_j a_j y_j K_kj, the decision value without bias
    u = np.zeros(n)
    diag = np.diag(Kv).copy()
    track_objective = logger.isEnabledFor(logging.DEBUG)
    objective = 0.0

    converged = False
    stalled = False
    updates = 0
    for _ in range(config.max_passes):
        for _ in range(n):
            pair = _select_pair(alpha, y, u, Kv, diag, C, config.tol)
            if pair is None:
                converged = True
                break
            if pair == (-1, -1):
                stalled = True
                break
            i, j = pair
            if not _take_step(i, j, alpha, y, u, Kv, C):
                stalled = True
                break
            updates += 1
            if on_update is not None:
                on_update(alpha.copy())
            if track_objective:
                current = dual_objective(alpha, y, Kv)
                if current < objective - 1e-10:
                    logger.debug("dual objective decreased: %.12g -> %.12g", objective, current)
                objective = current
        if converged or stalled:
            break

    if stalled:
        logger.warning("SMO stopped early: no pair with positive curvature makes progress")
    elif not converged:
        logger.warning(
            "SMO hit max_passes=%d before reaching tol=%g", config.max_passes, config.tol
        )

    u = Kv @ (alpha * y)
    bias = _bias(alpha, y, u, C)
    logger.info(
        "SMO finished: %d updates, %d support vectors, C=%.6g, converged=%s",
        updates,
        int(np.sum(alpha > SUPPORT_THRESHOLD)),
        C,
        converged,
    )
    return SvmModel(
        coefficients=alpha,
        labels=y,
        bias=bias,
        C=C,
        converged=converged,
        n_iterations=updates,
    )


def decision_value(model: SvmModel, k_vec: np.ndarray) -> float:
    """f(x) = sum_i c_i y_i k(x_i, x) + b given the kernel row against training data."""
    k = np.asarray(k_vec, dtype=np.float64)
    if k.shape != model.coefficients.shape:
        raise UsageError(f"kernel vector has {k.size} entries, model has {model.coefficients.size}")
    return float(k @ (model.coefficients * model.labels) + model.bias)


def predict_scores(model: SvmModel, features: np.ndarray) -> np.ndarray:
    """Decision values for each row of ``features``; larger means more signal-like."""
    if model.kernel_spec is None or model.training_data is None:
        raise UsageError("model has no kernel or training data attached")
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise UsageError(f"expected a feature matrix, got shape {X.shape}")
    if X.shape[0] == 0:
        return np.empty(0)
    if X.shape[1] != model.training_data.shape[1]:
        raise UsageError(
            f"model was trained on {model.training_data.shape[1]} features, got {X.shape[1]}"
        )
    cross = kernel_cross(X, model.training_data, model.kernel_spec)
    return cross @ (model.coefficients * model.labels) + model.bias


def lambda_grid_search(
    K: KernelMatrix | np.ndarray,
    labels: np.ndarray,
    lambdas: Sequence[float],
    config: SvmConfig,
    n_splits: int = 5,
    seed: int = 0,
) -> GridSearchResult:
    """Pick lambda by seeded k-fold cross-validation on the training Gram matrix.

    Each candidate is scored by its mean validation AUC over the splits. Ties go to the
    candidate listed first.

    Raises:
        UsageError: On an empty grid, a non-positive lambda, or too few rows.
        DataError: If a validation split holds a single class.
    """
    Kv = _values(K)
    y = to_signed_labels(labels)
    n = y.size
    if not lambdas:
        raise UsageError("lambda grid is empty")
    if not 2 <= n_splits <= n:
        raise UsageError(f"cannot run {n_splits}-fold CV on {n} rows")

    order = np.random.default_rng(seed).permutation(n)
    splits = np.array_split(order, n_splits)
    binary = (y > 0).astype(np.int64)
    scores: dict[float, float] = {}
    for lam in lambdas:
        if lam <= 0:
            raise UsageError(f"lambda must be positive, got {lam}")
        candidate = config.model_copy(update={"lambda_": lam, "c": None})
        split_aucs = []
        for k, held in enumerate(splits):
            train = np.setdiff1d(order, held)
            model = smo_train(Kv[np.ix_(train, train)], y[train], candidate)
            values = Kv[np.ix_(held, train)] @ (model.coefficients * model.labels) + model.bias
            try:
                split_aucs.append(auc(values, binary[held]))
            except DataError as e:
                raise DataError(f"cross-validation split {k}: {e}") from e
        scores[lam] = float(np.mean(split_aucs))
        logger.info("lambda=%g: cross-validated AUC %.4f", lam, scores[lam])

    best = lambdas[0]
    for lam in lambdas[1:]:
        if scores[lam] > scores[best]:
            best = lam
    return GridSearchResult(best_lambda=best, scores=scores)


def _select_pair(
    alpha: np.ndarray,
    y: np.ndarray,
    u: np.ndarray,
    K: np.ndarray,
    diag: np.ndarray,
    C: float,
    tol: float,
) -> tuple[int, int] | None:
    """Maximal violating pair, or None once the optimality gap is within ``tol``.

    Returns (-1, -1) when violators remain but none has positive curvature.
    """
    errors = u - y
    up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
    low = ((y < 0) & (alpha < C)) | ((y > 0) & (alpha > 0))
    if not up.any() or not low.any():
        return None
    up_idx = np.flatnonzero(up)
    i = int(up_idx[np.argmin(errors[up_idx])])
    low_idx = np.flatnonzero(low)
    if errors[low_idx].max() - errors[i] <= tol:
        return None
    candidates = low_idx[np.argsort(-errors[low_idx], kind="stable")]
    for j in candidates:
        if errors[j] - errors[i] <= tol:
            break
        eta = diag[i] + diag[j] - 2.0 * K[i, j]
        if j != i and eta > MIN_CURVATURE:
            return i, int(j)
    return -1, -1


def _take_step(
    i: int,
    j: int,
    alpha: np.ndarray,
    y: np.ndarray,
    u: np.ndarray,
    K: np.ndarray,
    C: float,
) -> bool:
    """Analytic two-multiplier update; modifies ``alpha`` and ``u`` in place."""
    a_i, a_j = alpha[i], alpha[j]
    if y[i] != y[j]:
        lo, hi = max(0.0, a_j - a_i), min(C, C + a_j - a_i)
    else:
        lo, hi = max(0.0, a_i + a_j - C), min(C, a_i + a_j)
    if hi - lo <= 0.0:
        return False

    eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
    e_i = u[i] - y[i]
    e_j = u[j] - y[j]
    new_j = float(np.clip(a_j + y[j] * (e_i - e_j) / eta, lo, hi))
    new_i = float(np.clip(a_i + y[i] * y[j] * (a_j - new_j), 0.0, C))
    if new_j == a_j and new_i == a_i:
        return False

    alpha[i], alpha[j] = new_i, new_j
    u += (new_i - a_i) * y[i] * K[:, i] + (new_j - a_j) * y[j] * K[:, j]
    return True


def _bias(alpha: np.ndarray, y: np.ndarray, u: np.ndarray, C: float) -> float:
    """Mean of y - u over free support vectors; the feasible midpoint if there are none."""
    free = (alpha > 0.0) & (alpha < C)
    if free.any():
        return float(np.mean(y[free] - u[free]))
    residual = y - u
    lower = (alpha <= 0.0) & (y > 0) | (alpha >= C) & (y < 0)
    upper = (alpha <= 0.0) & (y < 0) | (alpha >= C) & (y > 0)
    lo = float(residual[lower].max()) if lower.any() else float(residual.min())
    hi = float(residual[upper].min()) if upper.any() else float(residual.max())
    return (lo + hi) / 2.0


def _values(K: KernelMatrix | np.ndarray) -> np.ndarray:
    values = np.asarray(K.values if isinstance(K, KernelMatrix) else K, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise UsageError(f"Gram matrix must be square, got shape {values.shape}")
    return values

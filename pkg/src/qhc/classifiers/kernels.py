"""Gram matrices for the quantum fidelity, RBF, and linear kernels.

The fidelity kernel is k(x_i, x_j) = |<phi(x_j)|phi(x_i)>|^2, computed from exact
statevectors. Each input state is prepared once, then rows of the upper triangle are
filled from inner products.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from qhc.circuits.encoders import prepare_state
from qhc.models.enums import KernelKind
from qhc.models.specs import FeatureMapSpec, KernelSpec
from qhc.utils.exceptions import KernelError, QhcError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Symmetric n x n Gram matrix."""

    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def is_symmetric(self, atol: float = 0.0) -> bool:
        return bool(np.allclose(self.values, self.values.T, rtol=0.0, atol=atol))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.values).min())


def fidelity_kernel_entry(x_i: np.ndarray, x_j: np.ndarray, feature_map: FeatureMapSpec) -> float:
    """Squared overlap of the two embedded states."""
    phi_i = prepare_state(x_i, feature_map).amplitudes
    phi_j = prepare_state(x_j, feature_map).amplitudes
    return float(abs(np.vdot(phi_j, phi_i)) ** 2)


def kernel_entry(x_i: np.ndarray, x_j: np.ndarray, spec: KernelSpec) -> float:
    """One kernel value under ``spec``."""
    a = np.asarray(x_i, dtype=np.float64)
    b = np.asarray(x_j, dtype=np.float64)
    match spec.kind:
        case KernelKind.QUANTUM_FIDELITY:
            assert spec.feature_map is not None
            return fidelity_kernel_entry(a, b, spec.feature_map)
        case KernelKind.RBF:
            return float(np.exp(-spec.gamma_for(a.size) * np.sum((a - b) ** 2)))
        case _:
            return float(a @ b)


def encode_states(features: np.ndarray, feature_map: FeatureMapSpec) -> np.ndarray:
    """Stack of phi(x) amplitudes, one row per input row.

    Raises:
        KernelError: Naming the row whose state could not be prepared.
    """
    rows = _as_matrix(features)
    states = np.empty((rows.shape[0], 2**feature_map.n_qubits), dtype=np.complex128)
    for i, x in enumerate(rows):
        try:
            states[i] = prepare_state(x, feature_map).amplitudes
        except QhcError as e:
            raise KernelError(str(e), rows=(i,)) from e
    return states


def kernel_matrix(features: np.ndarray, spec: KernelSpec, n_jobs: int = 1) -> KernelMatrix:
    """Gram matrix K_ij = k(x_i, x_j) over the rows of ``features``.

    Rows are filled independently, so ``n_jobs`` > 1 spreads them over threads without
    changing any value.

    Raises:
        UsageError: If the feature width does not match the kernel's feature map.
        KernelError: If an entry cannot be computed or is not finite.
    """
    X = _check_width(_as_matrix(features), spec)
    n = X.shape[0]
    row_fn = _row_function(X, spec)
    K = np.zeros((n, n), dtype=np.float64)

    def fill(i: int) -> None:
        K[i, i + 1 :] = row_fn(i)

    if n_jobs > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            list(pool.map(fill, range(n)))
    else:
        for i in range(n):
            fill(i)

    K = K + K.T
    if spec.kind == KernelKind.LINEAR:
        np.fill_diagonal(K, np.einsum("ij,ij->i", X, X))
    else:
        np.fill_diagonal(K, 1.0)

    bad = np.argwhere(~np.isfinite(K))
    if bad.size:
        i, j = (int(v) for v in bad[0])
        raise KernelError("kernel entry is not finite", rows=(i, j))
    logger.debug("Built %dx%d %s Gram matrix", n, n, spec.kind)
    return KernelMatrix(K)


def kernel_cross(
    features: np.ndarray, training_data: np.ndarray, spec: KernelSpec
) -> np.ndarray:
    """m x n matrix whose row r is k(x_train_i, x_r) for every training row i."""
    X = _check_width(_as_matrix(features), spec)
    T = _check_width(_as_matrix(training_data), spec)
    match spec.kind:
        case KernelKind.QUANTUM_FIDELITY:
            assert spec.feature_map is not None
            train_states = encode_states(T, spec.feature_map)
            test_states = encode_states(X, spec.feature_map)
            return np.abs(test_states @ train_states.conj().T) ** 2
        case KernelKind.RBF:
            return np.exp(-spec.gamma_for(T.shape[1]) * cdist(X, T, "sqeuclidean"))
        case _:
            return X @ T.T


def kernel_vector(x: np.ndarray, training_data: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """k(x_train_i, x) for each training row."""
    return kernel_cross(np.asarray(x, dtype=np.float64)[None, :], training_data, spec)[0]


def _row_function(X: np.ndarray, spec: KernelSpec) -> Callable[[int], np.ndarray]:
    """Callable computing the strict upper-triangle part of row i."""
    match spec.kind:
        case KernelKind.QUANTUM_FIDELITY:
            assert spec.feature_map is not None
            states = encode_states(X, spec.feature_map)
            return lambda i: np.abs(states[i + 1 :].conj() @ states[i]) ** 2
        case KernelKind.RBF:
            gamma = spec.gamma_for(X.shape[1])
            return lambda i: np.exp(-gamma * cdist(X[i : i + 1], X[i + 1 :], "sqeuclidean")[0])
        case _:
            return lambda i: X[i + 1 :] @ X[i]


def _as_matrix(features: np.ndarray) -> np.ndarray:
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise UsageError(f"expected a feature matrix, got shape {X.shape}")
    return X


def _check_width(X: np.ndarray, spec: KernelSpec) -> np.ndarray:
    expected = spec.expected_dim
    if expected is not None and X.shape[1] != expected:
        raise UsageError(f"{spec.kind} kernel expects {expected} features, got {X.shape[1]}")
    return X

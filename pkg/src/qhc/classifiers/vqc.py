"""Variational quantum classifier with data re-uploading.

The circuit applies ``n_uploads`` blocks of (feature map on the next feature slice,
then a variational form with its own parameters) to |0...0> and reads the probability
of measuring |1> on qubit 0 as the class-1 probability.

Gradients use the parameter-shift rule, which is exact for the RY rotations the
variational form is built from: dp/dtheta_k = (p(theta_k + pi/2) - p(theta_k - pi/2))/2.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace

import numpy as np

from qhc.circuits.encoders import feature_map_circuit
from qhc.circuits.variational import build_variational_form
from qhc.classifiers.optim import AdamState, adam_step
from qhc.config.schema import TrainConfig
from qhc.models.dataset import Dataset
from qhc.models.enums import FeatureMapKind
from qhc.models.specs import FeatureMapSpec, VariationalFormSpec
from qhc.simulator.statevector import (
    Circuit,
    circuit_unitary,
    prob_qubit_one,
    run_circuit,
    zero_state,
)
from qhc.utils.exceptions import ConfigError, UsageError

logger = logging.getLogger(__name__)

PROB_CLAMP = 1e-12
SHIFT = math.pi / 2
# Rows per block when scoring large datasets through cached unitaries
_PREDICT_CHUNK = 512


@dataclass(frozen=True, eq=False)
class VqcModel:
    """Trainable parameters plus the circuit layout they belong to."""

    theta: np.ndarray
    feature_map: FeatureMapSpec = field(default_factory=lambda: FeatureMapSpec.pauli_zz(2))
    variational: VariationalFormSpec = field(default_factory=VariationalFormSpec)
    n_uploads: int = 2

    def __post_init__(self) -> None:
        if self.feature_map.kind == FeatureMapKind.AMPLITUDE:
            raise ConfigError("the VQC needs a gate-based feature map")
        if self.feature_map.n_qubits != self.variational.n_qubits:
            raise ConfigError(
                f"feature map uses {self.feature_map.n_qubits} qubits, "
                f"variational form {self.variational.n_qubits}"
            )
        if self.n_uploads < 1:
            raise ConfigError(f"n_uploads must be >= 1, got {self.n_uploads}")
        theta = np.asarray(self.theta, dtype=np.float64)
        if theta.shape != (self.n_params,):
            raise UsageError(f"VQC expects {self.n_params} parameters, got shape {theta.shape}")
        object.__setattr__(self, "theta", theta)

    @property
    def n_qubits(self) -> int:
        return self.variational.n_qubits

    @property
    def n_params(self) -> int:
        return self.n_uploads * self.variational.params_per_instance

    @property
    def input_dim(self) -> int:
        return self.n_uploads * self.feature_map.expected_dim

    def with_theta(self, theta: np.ndarray) -> VqcModel:
        return replace(self, theta=theta)


@dataclass
class VqcTrainResult:
    """Trained model and the mean training loss of each epoch."""

    model: VqcModel
    loss_trace: list[float] = field(default_factory=list)

    @property
    def final_loss(self) -> float | None:
        return self.loss_trace[-1] if self.loss_trace else None


def vqc_circuit(x: np.ndarray, model: VqcModel) -> Circuit:
    """Full gate sequence for input ``x``."""
    values = _check_input(x, model)
    d = model.feature_map.expected_dim
    p = model.variational.params_per_instance
    circuit = Circuit(model.n_qubits)
    for u in range(model.n_uploads):
        chunk = values[u * d : (u + 1) * d]
        circuit = circuit.compose(feature_map_circuit(chunk, model.feature_map))
        circuit = circuit.compose(
            build_variational_form(model.theta[u * p : (u + 1) * p], model.variational)
        )
    return circuit


def vqc_forward(x: np.ndarray, model: VqcModel) -> float:
    """Class-1 probability of one input, simulated gate by gate."""
    state = run_circuit(vqc_circuit(x, model), zero_state(model.n_qubits))
    return prob_qubit_one(state, 0)


def classify(p: float, threshold: float = 0.5) -> int:
    return 1 if p > threshold else 0


def bce_loss(probs: np.ndarray, labels: np.ndarray) -> float:
    """Mean binary cross-entropy with probabilities clamped to [1e-12, 1 - 1e-12]."""
    p = np.asarray(probs, dtype=np.float64).ravel()
    y = np.asarray(labels, dtype=np.float64).ravel()
    if p.size != y.size:
        raise UsageError(f"{p.size} probabilities but {y.size} labels")
    if p.size == 0:
        raise UsageError("loss of an empty batch")
    p = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def encoder_unitaries(features: np.ndarray, model: VqcModel) -> np.ndarray:
    """Feature-map unitaries per row and upload, shape (rows, n_uploads, 2**n, 2**n).

    These do not depend on theta, so training computes them once.
    """
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.input_dim:
        raise UsageError(f"VQC expects {model.input_dim} features, got shape {X.shape}")
    d = model.feature_map.expected_dim
    dim = 2**model.n_qubits
    out = np.empty((X.shape[0], model.n_uploads, dim, dim), dtype=np.complex128)
    for r, x in enumerate(X):
        for u in range(model.n_uploads):
            chunk = x[u * d : (u + 1) * d]
            out[r, u] = circuit_unitary(feature_map_circuit(chunk, model.feature_map))
    return out


def predict_proba(
    model: VqcModel, features: np.ndarray, encoders: np.ndarray | None = None
) -> np.ndarray:
    """Class-1 probabilities for every row; matches ``vqc_forward`` row by row."""
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise UsageError(f"expected a feature matrix, got shape {X.shape}")
    if X.shape[0] == 0:
        return np.empty(0)
    blocks = _variational_unitaries(model.theta[None, :], model)
    if encoders is not None:
        return _probabilities(encoders, blocks)[0]
    parts = [
        _probabilities(encoder_unitaries(X[s : s + _PREDICT_CHUNK], model), blocks)[0]
        for s in range(0, X.shape[0], _PREDICT_CHUNK)
    ]
    return np.concatenate(parts)


def batch_gradient(
    model: VqcModel,
    labels: np.ndarray,
    encoders: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Mean BCE gradient over a batch, plus the batch's probabilities at ``model.theta``.

    All 2L shifted parameter vectors are evaluated together with the base one.
    """
    y = np.asarray(labels, dtype=np.float64)
    L = model.n_params
    shifts = np.concatenate((np.zeros((1, L)), SHIFT * np.eye(L), -SHIFT * np.eye(L)))
    probs = _probabilities(encoders, _variational_unitaries(model.theta[None, :] + shifts, model))
    p = probs[0]
    dp = (probs[1 : L + 1] - probs[L + 1 :]) / 2.0
    pc = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
    dloss_dp = (pc - y) / (pc * (1.0 - pc))
    return (dp * dloss_dp[None, :]).mean(axis=1), p


def param_shift_grad(x: np.ndarray, y: int, model: VqcModel) -> np.ndarray:
    """BCE gradient for a single labelled sample."""
    values = _check_input(x, model)
    grad, _ = batch_gradient(model, np.array([y]), encoder_unitaries(values[None, :], model))
    return grad


def init_theta(n_params: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw in [-pi, pi] per parameter."""
    return rng.uniform(-math.pi, math.pi, n_params)


def vqc_train(
    train: Dataset,
    config: TrainConfig,
    feature_map: FeatureMapSpec | None = None,
    variational: VariationalFormSpec | None = None,
    n_uploads: int = 2,
    on_epoch: Callable[[int, float], None] | None = None,
) -> VqcTrainResult:
    """Minibatch Adam on the BCE loss.

    Parameters start uniform in [-pi, pi]; the same seeded generator then shuffles the
    rows every epoch, so a seed fixes the whole trajectory.

    Raises:
        ConfigError: If the data width does not match the circuit layout.
        UsageError: If the training set is empty.
    """
    fm = feature_map or FeatureMapSpec.pauli_zz(2)
    vf = variational or VariationalFormSpec(n_qubits=fm.n_qubits)
    L = n_uploads * vf.params_per_instance
    model = VqcModel(np.zeros(L), fm, vf, n_uploads)
    if train.n_features != model.input_dim:
        raise ConfigError(
            f"VQC with {n_uploads} uploads of a {fm.expected_dim}-feature map needs "
            f"{model.input_dim} features, data has {train.n_features}"
        )
    if train.n_samples == 0:
        raise UsageError("cannot train on an empty dataset")

    rng = np.random.default_rng(config.seed if config.seed is not None else 0)
    theta = init_theta(L, rng)
    state = AdamState.zeros(L)
    encoders = encoder_unitaries(train.features, model)
    labels = train.labels.astype(np.float64)

    trace: list[float] = []
    for epoch in range(config.epochs):
        order = rng.permutation(train.n_samples)
        total = 0.0
        for start in range(0, train.n_samples, config.batch_size):
            idx = order[start : start + config.batch_size]
            grad, probs = batch_gradient(model.with_theta(theta), labels[idx], encoders[idx])
            total += bce_loss(probs, labels[idx]) * idx.size
            theta, state = adam_step(theta, grad, state, config)
        epoch_loss = total / train.n_samples
        trace.append(epoch_loss)
        logger.debug("epoch %d/%d: loss %.6f", epoch + 1, config.epochs, epoch_loss)
        if on_epoch is not None:
            on_epoch(epoch + 1, epoch_loss)

    return VqcTrainResult(model=model.with_theta(theta), loss_trace=trace)


def _variational_unitaries(thetas: np.ndarray, model: VqcModel) -> np.ndarray:
    """Unitaries of each variational instance, shape (n_thetas, n_uploads, 2**n, 2**n)."""
    p = model.variational.params_per_instance
    dim = 2**model.n_qubits
    out = np.empty((thetas.shape[0], model.n_uploads, dim, dim), dtype=np.complex128)
    for s, theta in enumerate(thetas):
        for u in range(model.n_uploads):
            out[s, u] = circuit_unitary(
                build_variational_form(theta[u * p : (u + 1) * p], model.variational)
            )
    return out


def _probabilities(encoders: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    """P(qubit 0 = 1) for every (theta, row) pair, shape (n_thetas, rows)."""
    n_thetas = blocks.shape[0]
    rows, n_uploads, dim, _ = encoders.shape
    # First feature map acting on |0...0> is its first column
    psi = np.broadcast_to(encoders[:, 0, :, 0], (n_thetas, rows, dim))
    psi = np.einsum("sij,sbj->sbi", blocks[:, 0], psi)
    for u in range(1, n_uploads):
        psi = np.einsum("bij,sbj->sbi", encoders[:, u], psi)
        psi = np.einsum("sij,sbj->sbi", blocks[:, u], psi)
    odd = (np.arange(dim) & 1) == 1
    return (np.abs(psi[..., odd]) ** 2).sum(axis=-1)


def _check_input(x: np.ndarray, model: VqcModel) -> np.ndarray:
    values = np.asarray(x, dtype=np.float64)
    if values.shape != (model.input_dim,):
        raise UsageError(f"VQC expects {model.input_dim} features, got shape {values.shape}")
    return values

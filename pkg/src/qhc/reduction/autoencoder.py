"""Dense autoencoder for compressing features into a [0, 1]-bounded latent space.

Hidden layers use ReLU; the latent layer and the reconstruction layer use the logistic
sigmoid, so both latent codes and reconstructions stay inside (0, 1). Training
minimises the mean squared reconstruction error with Adam and keeps the snapshot with
the lowest validation error.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from pydantic import Field, model_validator
from scipy.special import expit

from qhc.classifiers.optim import AdamState, adam_step
from qhc.config.schema import AeTrainConfig
from qhc.models.specs import StrictModel
from qhc.utils.exceptions import ConfigError, DataError, UsageError

logger = logging.getLogger(__name__)

MIN_ROWS = 10


class AeArchitecture(StrictModel):
    """Encoder layer sizes from input to latent; the decoder mirrors them."""

    layer_sizes: tuple[int, ...] = Field(min_length=2)

    @model_validator(mode="after")
    def _check_sizes(self) -> AeArchitecture:
        if any(size < 1 for size in self.layer_sizes):
            raise ValueError(f"layer sizes must be positive, got {self.layer_sizes}")
        if self.latent_dim >= self.input_dim:
            raise ValueError(
                f"latent size {self.latent_dim} must be below input size {self.input_dim}"
            )
        return self

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def latent_dim(self) -> int:
        return self.layer_sizes[-1]

    @property
    def encoder_depth(self) -> int:
        """Number of dense layers in the encoder half."""
        return len(self.layer_sizes) - 1

    @property
    def full_sizes(self) -> tuple[int, ...]:
        """Every layer width through encoder and decoder, e.g. (4, 3, 2, 3, 4)."""
        return self.layer_sizes + tuple(reversed(self.layer_sizes[:-1]))

    def is_sigmoid_layer(self, index: int) -> bool:
        """Layer ``index`` (0-based over all dense layers) ends in a sigmoid."""
        return index in (self.encoder_depth - 1, 2 * self.encoder_depth - 1)

    @classmethod
    def from_hidden(cls, input_dim: int, hidden: list[int], latent_dim: int) -> AeArchitecture:
        return cls(layer_sizes=(input_dim, *hidden, latent_dim))


# Named shapes: (hidden encoder layers, latent size) and their training settings
PRESETS: dict[str, tuple[int, int, dict[str, float | int]]] = {
    "pytorch": (6, 16, {"learning_rate": 2e-3, "batch_size": 128, "epochs": 80}),
    "tensorflow": (7, 8, {"learning_rate": math.sqrt(3) * 1e-3, "batch_size": 93, "epochs": 30}),
}


def preset_architecture(name: str, input_dim: int) -> AeArchitecture:
    """Preset depth and latent size with hidden widths interpolated geometrically.

    Raises:
        ConfigError: On an unknown preset or an input no wider than the preset latent.
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown autoencoder preset {name!r}; choose from {sorted(PRESETS)}")
    n_hidden, latent, _ = PRESETS[name]
    if input_dim <= latent:
        raise ConfigError(f"preset {name!r} has latent size {latent}, input has {input_dim}")
    ratio = latent / input_dim
    hidden = [
        max(latent, round(input_dim * ratio ** (k / (n_hidden + 1))))
        for k in range(1, n_hidden + 1)
    ]
    return AeArchitecture.from_hidden(input_dim, hidden, latent)


def preset_train_config(name: str, seed: int | None = None) -> AeTrainConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown autoencoder preset {name!r}; choose from {sorted(PRESETS)}")
    return AeTrainConfig(seed=seed, **PRESETS[name][2])


@dataclass(eq=False)
class AeModel:
    """Weights shaped (fan_in, fan_out) and biases, one pair per dense layer."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    architecture: AeArchitecture

    def __post_init__(self) -> None:
        sizes = self.architecture.full_sizes
        expected = [(sizes[k], sizes[k + 1]) for k in range(len(sizes) - 1)]
        shapes = [tuple(w.shape) for w in self.weights]
        if shapes != expected or [b.shape for b in self.biases] != [(s[1],) for s in expected]:
            raise UsageError(f"layer shapes {shapes} do not match architecture {sizes}")

    @classmethod
    def initialize(cls, architecture: AeArchitecture, rng: np.random.Generator) -> AeModel:
        """Glorot-uniform weights, zero biases."""
        sizes = architecture.full_sizes
        weights = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:], strict=True):
            limit = math.sqrt(6.0 / (fan_in + fan_out))
            weights.append(rng.uniform(-limit, limit, (fan_in, fan_out)))
        biases = [np.zeros(size) for size in sizes[1:]]
        return cls(weights, biases, architecture)

    def copy(self) -> AeModel:
        return AeModel(
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.architecture,
        )


@dataclass
class AeTrainResult:
    """Selected model and the validation error after every epoch."""

    model: AeModel
    valid_mse: list[float] = field(default_factory=list)
    initial_valid_mse: float = math.nan
    best_epoch: int = 0
    test_mse: float | None = None


def ae_forward(x: np.ndarray, model: AeModel) -> tuple[np.ndarray, np.ndarray]:
    """(reconstruction, latent) for one input vector."""
    values = np.asarray(x, dtype=np.float64)
    if values.shape != (model.architecture.input_dim,):
        raise UsageError(
            f"autoencoder expects {model.architecture.input_dim} inputs, got {values.shape}"
        )
    activations, _ = _forward(values[None, :], model)
    return activations[-1][0], activations[model.architecture.encoder_depth][0]


def encode_latent(features: np.ndarray, model: AeModel) -> np.ndarray:
    """Latent codes for every row, through the encoder half only."""
    X = _check_matrix(features, model)
    activations, _ = _forward(X, model, depth=model.architecture.encoder_depth)
    return activations[-1]


def reconstruction_mse(features: np.ndarray, model: AeModel) -> float:
    X = _check_matrix(features, model)
    activations, _ = _forward(X, model)
    return float(np.mean((activations[-1] - X) ** 2))


def reconstruction_gradients(
    features: np.ndarray, model: AeModel
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """MSE over all entries and its gradients with respect to every weight and bias."""
    X = _check_matrix(features, model)
    activations, preacts = _forward(X, model)
    output = activations[-1]
    loss = float(np.mean((output - X) ** 2))
    arch = model.architecture

    n_layers = len(model.weights)
    grad_w: list[np.ndarray] = [np.empty(0)] * n_layers
    grad_b: list[np.ndarray] = [np.empty(0)] * n_layers
    delta = 2.0 * (output - X) / X.size
    for k in reversed(range(n_layers)):
        delta = delta * _activation_derivative(activations[k + 1], preacts[k], arch, k)
        grad_w[k] = activations[k].T @ delta
        grad_b[k] = delta.sum(axis=0)
        if k:
            delta = delta @ model.weights[k].T
    return loss, grad_w, grad_b


def ae_train(
    data: np.ndarray,
    architecture: AeArchitecture,
    config: AeTrainConfig,
    on_epoch: Callable[[int, float], None] | None = None,
) -> AeTrainResult:
    """Train on a seeded train/valid/test split of ``data`` rows.

    The returned model is the snapshot (initial weights included) with the lowest
    validation MSE; ``test_mse`` is that model's error on the held-out test rows.

    Raises:
        DataError: With fewer than 10 rows.
        UsageError: If the column count does not match the architecture.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < MIN_ROWS:
        raise DataError(f"autoencoder training needs at least {MIN_ROWS} rows, got {X.shape}")
    if X.shape[1] != architecture.input_dim:
        raise UsageError(
            f"architecture expects {architecture.input_dim} columns, data has {X.shape[1]}"
        )
    if X.min() < 0.0 or X.max() > 1.0:
        logger.warning("autoencoder input lies outside [0, 1]; sigmoid outputs cannot fit it")

    rng = np.random.default_rng(config.seed if config.seed is not None else 0)
    train_rows, valid_rows, test_rows = _split_rows(X.shape[0], config, rng)
    X_train, X_valid = X[train_rows], X[valid_rows]

    model = AeModel.initialize(architecture, rng)
    w_states = [AdamState.zeros(w.shape) for w in model.weights]
    b_states = [AdamState.zeros(b.shape) for b in model.biases]

    initial = reconstruction_mse(X_valid, model)
    best_mse, best_epoch, best_model = initial, 0, model.copy()
    trace: list[float] = []
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(X_train.shape[0])
        for start in range(0, order.size, config.batch_size):
            batch = X_train[order[start : start + config.batch_size]]
            _, grad_w, grad_b = reconstruction_gradients(batch, model)
            for k in range(len(model.weights)):
                model.weights[k], w_states[k] = adam_step(
                    model.weights[k], grad_w[k], w_states[k], config
                )
                model.biases[k], b_states[k] = adam_step(
                    model.biases[k], grad_b[k], b_states[k], config
                )
        valid_mse = reconstruction_mse(X_valid, model)
        trace.append(valid_mse)
        if valid_mse < best_mse:
            best_mse, best_epoch, best_model = valid_mse, epoch, model.copy()
        logger.debug("AE epoch %d/%d: valid MSE %.6g", epoch, config.epochs, valid_mse)
        if on_epoch is not None:
            on_epoch(epoch, valid_mse)

    test_mse = reconstruction_mse(X[test_rows], best_model) if test_rows.size else None
    logger.info(
        "AE training done: best valid MSE %.6g at epoch %d (initial %.6g)",
        best_mse,
        best_epoch,
        initial,
    )
    return AeTrainResult(
        model=best_model,
        valid_mse=trace,
        initial_valid_mse=initial,
        best_epoch=best_epoch,
        test_mse=test_mse,
    )


def _split_rows(
    n: int, config: AeTrainConfig, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    order = rng.permutation(n)
    n_train = max(1, int(round(config.train_fraction * n)))
    n_valid = max(1, int(round(config.valid_fraction * n)))
    if n_train + n_valid > n:
        raise DataError(f"{n} rows are too few for the train/valid split")
    n_test = min(n - n_train - n_valid, int(round(config.test_fraction * n)))
    return (
        order[:n_train],
        order[n_train : n_train + n_valid],
        order[n_train + n_valid : n_train + n_valid + n_test],
    )


def _forward(
    X: np.ndarray, model: AeModel, depth: int | None = None
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Activations (input first) and pre-activations of the first ``depth`` layers."""
    n_layers = len(model.weights) if depth is None else depth
    activations = [X]
    preacts = []
    for k in range(n_layers):
        z = activations[-1] @ model.weights[k] + model.biases[k]
        preacts.append(z)
        if model.architecture.is_sigmoid_layer(k):
            activations.append(expit(z))
        else:
            activations.append(np.maximum(z, 0.0))
    return activations, preacts


def _activation_derivative(
    a: np.ndarray, z: np.ndarray, arch: AeArchitecture, k: int
) -> np.ndarray:
    if arch.is_sigmoid_layer(k):
        return a * (1.0 - a)
    return (z > 0).astype(np.float64)


def _check_matrix(features: np.ndarray, model: AeModel) -> np.ndarray:
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.architecture.input_dim:
        raise UsageError(
            f"autoencoder expects {model.architecture.input_dim} columns, got shape {X.shape}"
        )
    return X

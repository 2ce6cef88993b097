"""Unit tests for the numpy autoencoder."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from qhc.config.schema import AeTrainConfig
from qhc.reduction.autoencoder import (
    PRESETS,
    AeArchitecture,
    AeModel,
    ae_forward,
    ae_train,
    encode_latent,
    preset_architecture,
    preset_train_config,
    reconstruction_gradients,
    reconstruction_mse,
)
from qhc.utils.exceptions import ConfigError, DataError, UsageError


def _manifold(n: int, seed: int = 0) -> np.ndarray:
    """Rows on a 2-D plane embedded in [0.05, 0.95]^8."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 1.0, (n, 2))
    mix = np.linspace(0.0, 1.0, 8)
    return 0.05 + 0.9 * (np.outer(t[:, 0], mix) + np.outer(t[:, 1], 1.0 - mix))


class TestArchitecture:
    def test_mirrored_sizes(self) -> None:
        arch = AeArchitecture(layer_sizes=(4, 3, 2))
        assert arch.full_sizes == (4, 3, 2, 3, 4)
        assert arch.encoder_depth == 2
        assert [arch.is_sigmoid_layer(k) for k in range(4)] == [False, True, False, True]

    def test_latent_must_shrink(self) -> None:
        with pytest.raises(ValidationError):
            AeArchitecture(layer_sizes=(4, 4))

    def test_from_hidden(self) -> None:
        arch = AeArchitecture.from_hidden(67, [32, 24], 16)
        assert arch.layer_sizes == (67, 32, 24, 16)

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_presets(self, name: str) -> None:
        n_hidden, latent, settings = PRESETS[name]
        arch = preset_architecture(name, 67)
        assert arch.latent_dim == latent
        assert len(arch.layer_sizes) == n_hidden + 2
        hidden = arch.layer_sizes[1:-1]
        assert all(a >= b for a, b in zip(arch.layer_sizes, arch.layer_sizes[1:]))
        assert all(size >= latent for size in hidden)
        config = preset_train_config(name, seed=3)
        assert config.epochs == settings["epochs"]
        assert config.seed == 3

    def test_unknown_preset(self) -> None:
        with pytest.raises(ConfigError):
            preset_architecture("keras", 67)
        with pytest.raises(ConfigError):
            preset_train_config("keras")

    def test_preset_needs_wider_input(self) -> None:
        with pytest.raises(ConfigError):
            preset_architecture("pytorch", 16)


class TestForward:
    def test_zero_weights_give_half(self) -> None:
        arch = AeArchitecture(layer_sizes=(4, 3, 2))
        sizes = arch.full_sizes
        weights = [np.zeros((a, b)) for a, b in zip(sizes[:-1], sizes[1:])]
        biases = [np.zeros(b) for b in sizes[1:]]
        recon, latent = ae_forward(np.array([0.1, 0.9, 0.3, 0.7]), AeModel(weights, biases, arch))
        np.testing.assert_allclose(recon, 0.5)
        np.testing.assert_allclose(latent, 0.5)

    def test_outputs_bounded(self) -> None:
        model = AeModel.initialize(AeArchitecture(layer_sizes=(8, 5, 3)), np.random.default_rng(0))
        X = np.random.default_rng(1).uniform(0, 1, (50, 8))
        latent = encode_latent(X, model)
        assert latent.shape == (50, 3)
        assert np.all((latent > 0) & (latent < 1))

    def test_latent_matches_single_row_forward(self) -> None:
        model = AeModel.initialize(AeArchitecture(layer_sizes=(6, 4, 2)), np.random.default_rng(2))
        X = np.random.default_rng(3).uniform(0, 1, (5, 6))
        latent = encode_latent(X, model)
        for r in range(5):
            np.testing.assert_allclose(ae_forward(X[r], model)[1], latent[r], atol=1e-14)

    def test_latent_is_row_permutation_equivariant(self) -> None:
        model = AeModel.initialize(AeArchitecture(layer_sizes=(8, 5, 3)), np.random.default_rng(4))
        X = _manifold(40, seed=6)
        perm = np.random.default_rng(7).permutation(40)
        np.testing.assert_allclose(encode_latent(X[perm], model), encode_latent(X, model)[perm])

    def test_shape_checks(self) -> None:
        arch = AeArchitecture(layer_sizes=(4, 2))
        model = AeModel.initialize(arch, np.random.default_rng(0))
        with pytest.raises(UsageError):
            ae_forward(np.zeros(3), model)
        with pytest.raises(UsageError):
            encode_latent(np.zeros((2, 5)), model)
        with pytest.raises(UsageError):
            AeModel(model.weights[:1], model.biases[:1], arch)


class TestGradients:
    def test_matches_finite_differences(self) -> None:
        arch = AeArchitecture(layer_sizes=(4, 3, 2))
        model = AeModel.initialize(arch, np.random.default_rng(4))
        X = np.random.default_rng(5).uniform(0, 1, (7, 4))
        _, grad_w, grad_b = reconstruction_gradients(X, model)
        h = 1e-6
        for params, grads in ((model.weights, grad_w), (model.biases, grad_b)):
            for param, grad in zip(params, grads):
                for idx in np.ndindex(param.shape):
                    original = param[idx]
                    param[idx] = original + h
                    plus = reconstruction_mse(X, model)
                    param[idx] = original - h
                    minus = reconstruction_mse(X, model)
                    param[idx] = original
                    assert grad[idx] == pytest.approx((plus - minus) / (2 * h), abs=1e-7)

    def test_loss_matches_mse(self) -> None:
        model = AeModel.initialize(AeArchitecture(layer_sizes=(4, 2)), np.random.default_rng(6))
        X = np.random.default_rng(7).uniform(0, 1, (9, 4))
        loss, _, _ = reconstruction_gradients(X, model)
        assert loss == pytest.approx(reconstruction_mse(X, model))


class TestTraining:
    def test_learns_low_dimensional_manifold(self) -> None:
        X = _manifold(1000)
        config = AeTrainConfig(learning_rate=1e-2, batch_size=32, epochs=150, seed=0)
        result = ae_train(X, AeArchitecture(layer_sizes=(8, 4)), config)
        assert min(result.valid_mse) < result.initial_valid_mse / 5
        assert result.best_epoch > 0
        assert result.test_mse is not None

    def test_zero_learning_rate_keeps_initial_snapshot(self) -> None:
        X = _manifold(100)
        config = AeTrainConfig(learning_rate=0.0, batch_size=16, epochs=3, seed=1)
        result = ae_train(X, AeArchitecture(layer_sizes=(8, 3)), config)
        assert result.best_epoch == 0
        assert result.valid_mse == [result.initial_valid_mse] * 3

    def test_seed_fixes_result(self) -> None:
        X = _manifold(120)
        config = AeTrainConfig(learning_rate=1e-2, batch_size=16, epochs=4, seed=9)
        arch = AeArchitecture(layer_sizes=(8, 5, 2))
        first = ae_train(X, arch, config)
        second = ae_train(X, arch, config)
        assert first.valid_mse == second.valid_mse
        for a, b in zip(first.model.weights, second.model.weights):
            np.testing.assert_array_equal(a, b)

    def test_epoch_callback(self) -> None:
        seen: list[int] = []
        config = AeTrainConfig(epochs=3, batch_size=16)
        arch = AeArchitecture(layer_sizes=(8, 2))
        ae_train(_manifold(60), arch, config, on_epoch=lambda epoch, _mse: seen.append(epoch))
        assert seen == [1, 2, 3]

    def test_too_few_rows(self) -> None:
        with pytest.raises(DataError):
            ae_train(_manifold(9), AeArchitecture(layer_sizes=(8, 2)), AeTrainConfig())

    def test_column_mismatch(self) -> None:
        with pytest.raises(UsageError):
            ae_train(_manifold(20), AeArchitecture(layer_sizes=(6, 2)), AeTrainConfig())

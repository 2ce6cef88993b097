"""Pydantic settings schema for qhc run configuration."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from qhc.models.enums import FeatureMapKind
from qhc.models.specs import FeatureMapSpec, KernelSpec, VariationalFormSpec

# Default split: 576 QSVM / 3000 VQC training rows, five 720-row test folds
DEFAULT_SVM_TRAIN_SIZE = 576
DEFAULT_VQC_TRAIN_SIZE = 3000
DEFAULT_N_FOLDS = 5
DEFAULT_FOLD_SIZE = 720


class Section(BaseModel):
    """Config section that rejects unknown keys."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class DataConfig(Section):
    """Dataset schema, fold split, and the interval features are scaled onto."""

    label_column: str = "label"
    train_size: int | None = Field(default=None, ge=1)
    n_folds: int = Field(default=DEFAULT_N_FOLDS, ge=2)
    fold_size: int = Field(default=DEFAULT_FOLD_SIZE, ge=1)
    feature_range: tuple[float, float] = (0.0, 1.0)

    @model_validator(mode="after")
    def _check_feature_range(self) -> DataConfig:
        low, high = self.feature_range
        if not 0.0 <= low < high <= 1.0:
            raise ValueError(f"feature_range must satisfy 0 <= low < high <= 1, got {low}, {high}")
        return self


class SvmConfig(Section):
    """Dual SVM solver settings.

    The box constant is C = 1/(2 n lambda) unless ``c`` is given directly.
    """

    lambda_: float = Field(default=0.2, gt=0, alias="lambda")
    c: float | None = Field(default=None, gt=0)
    tol: float = Field(default=1e-3, gt=0)
    max_passes: int = Field(default=200, ge=1)
    lambda_grid: list[float] = Field(default_factory=list)

    def box_constant(self, n_samples: int) -> float:
        if self.c is not None:
            return self.c
        return 1.0 / (2 * n_samples * self.lambda_)


class TrainConfig(Section):
    """VQC optimisation settings."""

    learning_rate: float = Field(default=5e-3, ge=0)
    batch_size: int = Field(default=50, ge=1)
    epochs: int = Field(default=70, ge=0)
    adam_beta1: float = Field(default=0.9, ge=0, lt=1)
    adam_beta2: float = Field(default=0.999, ge=0, lt=1)
    adam_eps: float = Field(default=1e-8, gt=0)
    seed: int | None = None


class VqcConfig(Section):
    """VQC architecture and training."""

    feature_map: FeatureMapSpec = Field(default_factory=lambda: FeatureMapSpec.pauli_zz(reps=2))
    variational: VariationalFormSpec = Field(default_factory=VariationalFormSpec)
    n_uploads: int = Field(default=2, ge=1)
    training: TrainConfig = Field(default_factory=TrainConfig)

    @model_validator(mode="after")
    def _check_gate_map(self) -> VqcConfig:
        if self.feature_map.kind == FeatureMapKind.AMPLITUDE:
            raise ValueError("the VQC re-uploads data through a gate-based feature map")
        if self.feature_map.n_qubits != self.variational.n_qubits:
            raise ValueError("feature map and variational form must share the qubit count")
        return self


class AeTrainConfig(Section):
    """Autoencoder optimisation settings and train/valid/test fractions."""

    learning_rate: float = Field(default=2e-3, ge=0)
    batch_size: int = Field(default=128, ge=1)
    epochs: int = Field(default=80, ge=0)
    adam_beta1: float = Field(default=0.9, ge=0, lt=1)
    adam_beta2: float = Field(default=0.999, ge=0, lt=1)
    adam_eps: float = Field(default=1e-8, gt=0)
    seed: int | None = None
    train_fraction: float = Field(default=0.8, gt=0, lt=1)
    valid_fraction: float = Field(default=0.1, gt=0, lt=1)
    test_fraction: float = Field(default=0.1, ge=0, lt=1)

    @model_validator(mode="after")
    def _check_fractions(self) -> AeTrainConfig:
        total = self.train_fraction + self.valid_fraction + self.test_fraction
        if not math.isclose(total, 1.0, abs_tol=1e-9):
            raise ValueError(f"train/valid/test fractions must sum to 1, got {total:g}")
        return self


class AutoencoderConfig(Section):
    """Autoencoder shape; ``preset`` overrides the explicit sizes."""

    latent_dim: int = Field(default=16, ge=1)
    hidden_layers: list[int] = Field(default_factory=list)
    preset: str | None = None
    training: AeTrainConfig = Field(default_factory=AeTrainConfig)


class RunConfig(BaseSettings):
    """Root run configuration.

    Hierarchy: CLI flags > env vars (QHC_*) > config file > defaults.
    """

    seed: int = 0
    output_dir: str = "runs"
    n_jobs: int = Field(default=1, ge=1)

    data: DataConfig = Field(default_factory=DataConfig)
    svm: SvmConfig = Field(default_factory=SvmConfig)
    kernel: KernelSpec = Field(
        default_factory=lambda: KernelSpec.quantum(FeatureMapSpec.amplitude(4))
    )
    vqc: VqcConfig = Field(default_factory=VqcConfig)
    autoencoder: AutoencoderConfig = Field(default_factory=AutoencoderConfig)

    model_config = SettingsConfigDict(env_prefix="QHC_", extra="forbid")

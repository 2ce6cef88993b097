"""JSON documents written by training, evaluation, and reduction runs."""

from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from qhc.config.schema import SvmConfig, TrainConfig
from qhc.evaluation.metrics import AucSummary
from qhc.models.specs import FeatureMapSpec, KernelSpec, VariationalFormSpec


class Document(BaseModel):
    """Base for persisted documents: unknown keys rejected, aliases accepted."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class FeatureMeta(Document):
    """Input columns a model expects and the min-max scaling fitted on its training rows."""

    names: list[str]
    label_column: str = "label"
    mins: list[float]
    maxs: list[float]
    feature_range: tuple[float, float] = (0.0, 1.0)


class SplitMeta(Document):
    """How the training run partitioned its input file."""

    train_size: int
    n_folds: int
    fold_size: int
    seed: int


class SvmArtifact(Document):
    """Trained kernel SVM: dual coefficients, bias, and the scaled training rows."""

    model_type: Literal["qsvm", "svm"]
    kernel: KernelSpec
    C: float
    lambda_: float | None = Field(default=None, alias="lambda")
    bias: float
    coefficients: list[float]
    labels: list[float]
    converged: bool
    training_data: list[list[float]]
    feature_meta: FeatureMeta
    split: SplitMeta | None = None
    train_config: SvmConfig | None = None


class VqcArtifact(Document):
    """Trained variational classifier parameters and circuit layout."""

    model_type: Literal["vqc"] = "vqc"
    theta: list[float]
    feature_map: FeatureMapSpec
    variational: VariationalFormSpec
    n_uploads: int
    final_loss: float | None = None
    feature_meta: FeatureMeta
    split: SplitMeta | None = None
    train_config: TrainConfig | None = None


ModelArtifact = Annotated[SvmArtifact | VqcArtifact, Field(discriminator="model_type")]


class AeArtifact(Document):
    """Trained autoencoder weights plus the scaling applied to its inputs."""

    model_type: Literal["autoencoder"] = "autoencoder"
    layer_sizes: list[int]
    weights: list[list[list[float]]]
    biases: list[list[float]]
    best_epoch: int
    initial_valid_mse: float
    best_valid_mse: float
    test_mse: float | None = None
    feature_meta: FeatureMeta


class LambdaScore(Document):
    lambda_: float = Field(alias="lambda")
    auc: float


class MetricsReport(Document):
    """Fold AUCs plus enough context to trace how they were produced."""

    model_type: str
    summary: AucSummary
    n_train: int | None = None
    fold_sizes: list[int] = Field(default_factory=list)
    C: float | None = None
    lambda_: float | None = Field(default=None, alias="lambda")
    n_support: int | None = None
    converged: bool | None = None
    lambda_grid: list[LambdaScore] = Field(default_factory=list)
    final_loss: float | None = None
    model_path: str | None = None
    config: dict[str, Any] = Field(default_factory=dict)

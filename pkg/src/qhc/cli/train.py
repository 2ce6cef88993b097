"""CLI train commands: fit QSVM, classical SVM, or VQC and score the test folds."""

from __future__ import annotations

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import typer
from pydantic import ValidationError
from rich.table import Table

from qhc.cli.console import abort, console
from qhc.cli.context import state
from qhc.cli.options import parse_list
from qhc.config.loader import apply_overrides
from qhc.config.schema import RunConfig
from qhc.data.csv_io import load_csv
from qhc.models.enums import FeatureMapKind, KernelKind, ModelKind
from qhc.models.specs import FeatureMapSpec, KernelSpec
from qhc.pipeline.persistence import save_json, write_roc_csv, write_series_csv
from qhc.pipeline.training import TrainingResult, run_svm, run_vqc
from qhc.utils.exceptions import QhcError
from qhc.utils.io import staged_writes

logger = logging.getLogger(__name__)

train_app = typer.Typer(name="train", help="Train a classifier and score its test folds")

T = TypeVar("T")

_DEFAULT_QUBITS = {FeatureMapKind.AMPLITUDE: 4, FeatureMapKind.U2_REUPLOADING: 8}


@train_app.command("qsvm")
def train_qsvm(
    data: Path = typer.Option(..., "--data", "-d", help="Input CSV"),
    feature_map: FeatureMapKind | None = typer.Option(
        None, "--map", help="amplitude or u2_reuploading [default: config kernel]"
    ),
    qubits: int | None = typer.Option(None, "--qubits", help="Qubits for amplitude encoding"),
    lambda_: float | None = typer.Option(None, "--lambda", help="Regularisation strength"),
    c: float | None = typer.Option(None, "--c", help="Box constant (overrides --lambda)"),
    lambda_grid: str | None = typer.Option(None, "--lambda-grid", help="e.g. 0.05,0.1,0.2"),
    train_size: int | None = typer.Option(None, "--train-size", help="Training rows"),
    n_folds: int | None = typer.Option(None, "--n-folds", help="Test folds"),
    fold_size: int | None = typer.Option(None, "--fold-size", help="Rows per test fold"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    n_jobs: int | None = typer.Option(None, "--n-jobs", help="Threads for the Gram matrix"),
    out_dir: Path | None = typer.Option(None, "--out-dir", help="Artifact directory"),
    label_column: str | None = typer.Option(None, "--label-column", help="Label column name"),
) -> None:
    """Quantum fidelity-kernel SVM."""
    overrides = _common_overrides(
        train_size, n_folds, fold_size, seed, n_jobs, out_dir, label_column
    )
    overrides["svm"] = _svm_overrides(lambda_, c, lambda_grid)
    if feature_map is not None or qubits is not None:
        overrides["kernel"] = _quantum_kernel(feature_map, qubits)
    _run(data, overrides, ModelKind.QSVM)


@train_app.command("svm")
def train_svm(
    data: Path = typer.Option(..., "--data", "-d", help="Input CSV"),
    kernel: KernelKind = typer.Option(KernelKind.RBF, "--kernel", help="linear or rbf"),
    gamma: float | None = typer.Option(None, "--gamma", help="RBF width [default: 1/d]"),
    lambda_: float | None = typer.Option(None, "--lambda", help="Regularisation strength"),
    c: float | None = typer.Option(None, "--c", help="Box constant (overrides --lambda)"),
    lambda_grid: str | None = typer.Option(None, "--lambda-grid", help="e.g. 0.05,0.1,0.2"),
    train_size: int | None = typer.Option(None, "--train-size", help="Training rows"),
    n_folds: int | None = typer.Option(None, "--n-folds", help="Test folds"),
    fold_size: int | None = typer.Option(None, "--fold-size", help="Rows per test fold"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    n_jobs: int | None = typer.Option(None, "--n-jobs", help="Threads for the Gram matrix"),
    out_dir: Path | None = typer.Option(None, "--out-dir", help="Artifact directory"),
    label_column: str | None = typer.Option(None, "--label-column", help="Label column name"),
) -> None:
    """Classical SVM with a linear or RBF kernel."""
    if kernel == KernelKind.QUANTUM_FIDELITY:
        msg = "use `qhc train qsvm` for the quantum kernel"
        raise typer.BadParameter(msg, param_hint="--kernel")
    if gamma is not None and kernel != KernelKind.RBF:
        raise typer.BadParameter("--gamma applies to the rbf kernel only", param_hint="--gamma")
    overrides = _common_overrides(
        train_size, n_folds, fold_size, seed, n_jobs, out_dir, label_column
    )
    overrides["svm"] = _svm_overrides(lambda_, c, lambda_grid)
    if kernel == KernelKind.RBF:
        overrides["kernel"] = _checked(KernelSpec.rbf, "--gamma", gamma)
    else:
        overrides["kernel"] = KernelSpec.linear()
    _run(data, overrides, ModelKind.SVM)


@train_app.command("vqc")
def train_vqc(
    data: Path = typer.Option(..., "--data", "-d", help="Input CSV"),
    epochs: int | None = typer.Option(None, "--epochs", help="Training epochs"),
    lr: float | None = typer.Option(None, "--lr", help="Adam learning rate"),
    batch: int | None = typer.Option(None, "--batch", help="Minibatch size"),
    reps: int | None = typer.Option(None, "--reps", help="Feature-map repetitions"),
    rotation_layers: int | None = typer.Option(
        None, "--rotation-layers", help="RY layers per variational block"
    ),
    uploads: int | None = typer.Option(None, "--uploads", help="Data re-uploading blocks"),
    feature_range: str | None = typer.Option(
        None, "--feature-range", help="Scaled feature interval, e.g. 0.25,0.75"
    ),
    train_size: int | None = typer.Option(None, "--train-size", help="Training rows"),
    n_folds: int | None = typer.Option(None, "--n-folds", help="Test folds"),
    fold_size: int | None = typer.Option(None, "--fold-size", help="Rows per test fold"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    out_dir: Path | None = typer.Option(None, "--out-dir", help="Artifact directory"),
    label_column: str | None = typer.Option(None, "--label-column", help="Label column name"),
) -> None:
    """Variational quantum classifier with data re-uploading."""
    overrides = _common_overrides(train_size, n_folds, fold_size, seed, None, out_dir, label_column)
    overrides["data"]["feature_range"] = _feature_range(feature_range)
    overrides["vqc"] = {
        "n_uploads": uploads,
        "variational": {"rotation_layers": rotation_layers},
        "training": {"epochs": epochs, "learning_rate": lr, "batch_size": batch},
    }
    if reps is not None:
        overrides["vqc"]["feature_map"] = _checked(FeatureMapSpec.pauli_zz, "--reps", reps)
    _run(data, overrides, ModelKind.VQC)


def _run(data: Path, overrides: dict[str, Any], kind: ModelKind) -> None:
    try:
        config = apply_overrides(state.config, overrides)
        dataset = load_csv(data, config.data.label_column)
        console.print(
            f"Training [info]{kind}[/info] on {dataset.n_samples} rows x "
            f"{dataset.n_features} features"
        )
        if kind == ModelKind.VQC:
            epochs = config.vqc.training.epochs

            def on_epoch(epoch: int, loss: float) -> None:
                if state.verbose or epoch == epochs or epoch % 10 == 0:
                    console.print(f"  [{epoch}/{epochs}] loss {loss:.5f}")

            result = run_vqc(dataset, config, on_epoch=on_epoch)
        else:
            result = run_svm(dataset, config, kind)

        out = Path(config.output_dir)
        model_path = out / f"{kind}_model.json"
        result.metrics.model_path = str(model_path)
        with staged_writes():
            save_json(result.artifact, model_path)
            save_json(result.metrics, out / f"{kind}_metrics.json")
            write_roc_csv(result.roc, out / f"{kind}_roc.csv")
            if kind == ModelKind.VQC:
                write_series_csv(result.loss_trace, out / "vqc_loss.csv", "epoch", "loss")
    except QhcError as e:
        abort(e, "Training failed")

    _print_summary(result, config)
    console.print(f"[success]Artifacts written to {out}[/success]")


def _print_summary(result: TrainingResult, config: RunConfig) -> None:
    metrics = result.metrics
    summary = metrics.summary
    table = Table(title=f"{result.model_kind} test folds")
    table.add_column("Fold", style="dim")
    table.add_column("Rows", justify="right")
    table.add_column("AUC", justify="right", style="metric")
    for k, (size, value) in enumerate(zip(metrics.fold_sizes, summary.per_fold, strict=True)):
        table.add_row(str(k), str(size), f"{value:.4f}")
    console.print(table)
    console.print(f"  AUC:             [metric]{summary.mean:.4f} ± {summary.std:.4f}[/metric]")
    console.print(f"  Pooled AUC:      {summary.concatenated_auc:.4f}")
    if metrics.C is not None:
        if metrics.lambda_ is not None:
            console.print(
                f"  C = 1/(2·{metrics.n_train}·{metrics.lambda_:g}) = {metrics.C:.6g}"
            )
        else:
            console.print(f"  C = {metrics.C:.6g}")
        console.print(f"  Support vectors: {metrics.n_support}")
        if metrics.converged is False:
            console.print("  [warning]SMO stopped before reaching tolerance[/warning]")
    if metrics.final_loss is not None:
        console.print(f"  Final loss:      {metrics.final_loss:.5f}")
    console.print(f"  Seed:            {config.seed}")
    console.print(f"  Wall time:       {result.elapsed_s:.1f}s")


def _common_overrides(
    train_size: int | None,
    n_folds: int | None,
    fold_size: int | None,
    seed: int | None,
    n_jobs: int | None,
    out_dir: Path | None,
    label_column: str | None,
) -> dict[str, Any]:
    return {
        "seed": seed,
        "n_jobs": n_jobs,
        "output_dir": str(out_dir) if out_dir is not None else None,
        "data": {
            "train_size": train_size,
            "n_folds": n_folds,
            "fold_size": fold_size,
            "label_column": label_column,
        },
    }


def _svm_overrides(lambda_: float | None, c: float | None, grid: str | None) -> dict[str, Any]:
    return {"lambda": lambda_, "c": c, "lambda_grid": parse_list(grid, float, "--lambda-grid")}


def _feature_range(raw: str | None) -> tuple[float, float] | None:
    bounds = parse_list(raw, float, "--feature-range")
    if bounds is None:
        return None
    if len(bounds) != 2:
        raise typer.BadParameter("expected two numbers: low,high", param_hint="--feature-range")
    return bounds[0], bounds[1]


def _quantum_kernel(feature_map: FeatureMapKind | None, qubits: int | None) -> KernelSpec:
    kind = feature_map or FeatureMapKind.AMPLITUDE
    if kind == FeatureMapKind.PAULI_ZZ:
        raise typer.BadParameter("pauli_zz is the VQC feature map", param_hint="--map")
    if kind == FeatureMapKind.U2_REUPLOADING:
        return KernelSpec.quantum(FeatureMapSpec.u2_reuploading())
    amplitude = _checked(FeatureMapSpec.amplitude, "--qubits", qubits or _DEFAULT_QUBITS[kind])
    return KernelSpec.quantum(amplitude)


def _checked(factory: Callable[..., T], flag: str, *args: Any) -> T:
    """Build a spec from flag values, reporting validation failures as usage errors."""
    try:
        return factory(*args)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        raise typer.BadParameter(messages, param_hint=flag) from e

"""CLI evaluate command: score a saved model on test data."""

from __future__ import annotations

import logging
from pathlib import Path

import typer
from rich.table import Table

from qhc.cli.console import abort, console
from qhc.cli.context import state
from qhc.data.csv_io import load_csv
from qhc.pipeline.evaluation import evaluate_artifact, evaluation_folds
from qhc.pipeline.persistence import load_model_artifact, save_json, write_roc_csv
from qhc.utils.exceptions import QhcError
from qhc.utils.io import staged_writes

logger = logging.getLogger(__name__)

evaluate_app = typer.Typer(name="evaluate", help="Score a saved model on test folds")


@evaluate_app.callback(invoke_without_command=True)
def evaluate(
    model: Path = typer.Option(..., "--model", help="Model JSON written by `qhc train`"),
    data: list[Path] = typer.Option(
        ..., "--data", "-d", help="Test CSV; repeat for one file per fold"
    ),
    n_folds: int | None = typer.Option(None, "--n-folds", help="Cut a single file into folds"),
    reuse_split: bool = typer.Option(
        False, "--reuse-split", help="Re-create the training run's test folds from --data"
    ),
    out_dir: Path | None = typer.Option(None, "--out-dir", help="Artifact directory"),
    prefix: str = typer.Option("eval", "--prefix", help="Output file prefix"),
) -> None:
    """Reload a model, score each fold, and write AUCs and the pooled ROC curve."""
    try:
        artifact = load_model_artifact(model)
        label_column = artifact.feature_meta.label_column
        datasets = [load_csv(path, label_column) for path in data]
        folds = evaluation_folds(datasets, artifact, n_folds=n_folds, reuse_split=reuse_split)
        result = evaluate_artifact(artifact, folds, state.config)
        result.metrics.model_path = str(model)
        target = out_dir or Path(state.config.output_dir)
        with staged_writes():
            save_json(result.metrics, target / f"{prefix}_metrics.json")
            write_roc_csv(result.roc, target / f"{prefix}_roc.csv")
    except QhcError as e:
        abort(e, "Evaluation failed")

    summary = result.summary
    table = Table(title=f"{artifact.model_type} on {len(folds)} folds")
    table.add_column("Fold", style="dim")
    table.add_column("Rows", justify="right")
    table.add_column("AUC", justify="right", style="metric")
    for k, (fold, value) in enumerate(zip(folds, summary.per_fold, strict=True)):
        table.add_row(str(k), str(fold.n_samples), f"{value:.4f}")
    console.print(table)
    console.print(f"  AUC:        [metric]{summary.mean:.4f} ± {summary.std:.4f}[/metric]")
    console.print(f"  Pooled AUC: {summary.concatenated_auc:.4f}")
    console.print(f"[success]Artifacts written to {target}[/success]")

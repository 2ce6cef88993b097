"""CLI reduce command: shrink a dataset to fewer features."""

from __future__ import annotations

import logging
from pathlib import Path

import typer
from rich.table import Table

from qhc.cli.console import abort, console
from qhc.cli.context import state
from qhc.cli.options import parse_list
from qhc.config.loader import apply_overrides
from qhc.data.csv_io import load_csv, save_csv
from qhc.models.enums import ReduceMode
from qhc.pipeline.persistence import save_json, write_series_csv
from qhc.pipeline.reduction import reduce_by_auc, reduce_by_autoencoder
from qhc.utils.exceptions import QhcError
from qhc.utils.io import staged_writes

logger = logging.getLogger(__name__)

reduce_app = typer.Typer(name="reduce", help="Reduce features by AUC ranking or an autoencoder")

# Rows shown in the ranking table
_TABLE_ROWS = 20


@reduce_app.callback(invoke_without_command=True)
def reduce(
    data: Path = typer.Option(..., "--data", "-d", help="Input CSV"),
    out: Path = typer.Option(..., "--out", "-o", help="Output CSV"),
    mode: ReduceMode = typer.Option(..., "--mode", "-m", help="auc or ae"),
    k: int = typer.Option(16, "--k", help="Features to keep (auc mode)"),
    latent: int | None = typer.Option(None, "--latent", help="Latent size (ae mode)"),
    hidden: str | None = typer.Option(None, "--hidden", help="Hidden widths, e.g. 32,24"),
    preset: str | None = typer.Option(None, "--preset", help="pytorch or tensorflow"),
    epochs: int | None = typer.Option(None, "--epochs", help="AE training epochs"),
    lr: float | None = typer.Option(None, "--lr", help="AE learning rate"),
    batch: int | None = typer.Option(None, "--batch", help="AE batch size"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    model_out: Path | None = typer.Option(
        None, "--model-out", help="AE model JSON [default: ae_model.json next to --out]"
    ),
    label_column: str | None = typer.Option(None, "--label-column", help="Label column name"),
) -> None:
    """Write a dataset with fewer features."""
    overrides = {
        "seed": seed,
        "data": {"label_column": label_column},
        "autoencoder": {
            "latent_dim": latent,
            "hidden_layers": parse_list(hidden, int, "--hidden"),
            "preset": preset,
            "training": {"epochs": epochs, "learning_rate": lr, "batch_size": batch},
        },
    }
    try:
        config = apply_overrides(state.config, overrides)
        dataset = load_csv(data, config.data.label_column)
        if mode == ReduceMode.AUC:
            ranked = reduce_by_auc(dataset, k)
            save_csv(ranked.dataset, out)
        else:
            reduced = reduce_by_autoencoder(dataset, config.autoencoder, config.seed)
            model_path = model_out or out.parent / "ae_model.json"
            trace_path = model_path.parent / "ae_valid_mse.csv"
            with staged_writes():
                save_csv(reduced.dataset, out)
                save_json(reduced.artifact, model_path)
                write_series_csv(reduced.training.valid_mse, trace_path, "epoch", "valid_mse")
    except QhcError as e:
        abort(e, "Reduction failed")

    if mode == ReduceMode.AUC:
        table = Table(title=f"Kept {k} of {dataset.n_features} features")
        table.add_column("#", style="dim", width=4)
        table.add_column("Feature", style="cyan")
        table.add_column("AUC", justify="right")
        table.add_column("max(A, 1-A)", justify="right", style="metric")
        for i, rank in enumerate(ranked.ranking[:_TABLE_ROWS], 1):
            table.add_row(str(i), rank.name, f"{rank.auc:.4f}", f"{rank.discrimination:.4f}")
        console.print(table)
    else:
        result = reduced.training
        console.print(f"  Initial valid MSE: {result.initial_valid_mse:.6g}")
        best = reduced.artifact.best_valid_mse
        console.print(
            f"  Best valid MSE:    [metric]{best:.6g}[/metric] (epoch {result.best_epoch})"
        )
        if result.test_mse is not None:
            console.print(f"  Test MSE:          [metric]{result.test_mse:.6g}[/metric]")
        console.print(f"  Wall time:         {reduced.elapsed_s:.1f}s")
        console.print(f"  Model:             {model_path}")
    console.print(f"[success]Wrote {out}[/success]")

"""CLI gen-data command: write seeded synthetic two-class data."""

from __future__ import annotations

import logging
from pathlib import Path

import typer

from qhc.cli.console import abort, console
from qhc.cli.context import state
from qhc.data.csv_io import save_csv
from qhc.data.synthetic import gen_synthetic
from qhc.utils.exceptions import QhcError

logger = logging.getLogger(__name__)

gen_data_app = typer.Typer(name="gen-data", help="Generate seeded synthetic data")


@gen_data_app.callback(invoke_without_command=True)
def gen_data(
    out: Path = typer.Option(..., "--out", "-o", help="Output CSV path"),
    n: int = typer.Option(4176, "--n", help="Number of rows (even)"),
    d: int = typer.Option(16, "--d", help="Number of features"),
    sep: float = typer.Option(1.5, "--sep", help="Distance between the class means"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed [default: config seed]"),
) -> None:
    """Write two Gaussian classes with means `--sep` apart."""
    seed = seed if seed is not None else state.config.seed
    try:
        dataset = gen_synthetic(n, d, sep, seed)
        save_csv(dataset, out)
    except QhcError as e:
        abort(e)
    console.print(
        f"[success]Wrote {dataset.n_samples} rows x {dataset.n_features} "
        f"features to {out}[/success]"
    )

"""Root Typer application with global options and sub-command composition."""

from __future__ import annotations

import typer

from qhc import __version__
from qhc.cli.console import abort
from qhc.cli.context import state
from qhc.config.loader import load_config
from qhc.utils.exceptions import ConfigError
from qhc.utils.logging import setup_logging

app = typer.Typer(
    name="qhc",
    help="Quantum kernel SVM and variational classifiers on an exact statevector simulator",
    rich_markup_mode="rich",
    no_args_is_help=True,
)


def _version_callback(value: bool) -> None:
    if value is True:
        typer.echo(f"qhc {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable DEBUG-level logging",
        envvar="QHC_VERBOSE",
    ),
    config: str | None = typer.Option(
        None,
        "--config",
        "-c",
        help="Path to YAML/JSON config file",
    ),
    _version: bool = typer.Option(
        False,
        "--version",
        callback=_version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
) -> None:
    """Train and evaluate quantum and classical classifiers on tabular data."""
    setup_logging(verbose)

    state.verbose = verbose
    state.config_path = config

    try:
        state.config = load_config(config_path=config)
    except ConfigError as e:
        abort(e, "Configuration error")


# ── Sub-command registration ──
from qhc.cli.config_cmd import config_app  # noqa: E402
from qhc.cli.evaluate import evaluate_app  # noqa: E402
from qhc.cli.gen_data import gen_data_app  # noqa: E402
from qhc.cli.kernel_dump import kernel_dump_app  # noqa: E402
from qhc.cli.reduce import reduce_app  # noqa: E402
from qhc.cli.train import train_app  # noqa: E402

app.add_typer(gen_data_app, name="gen-data")
app.add_typer(reduce_app, name="reduce")
app.add_typer(train_app, name="train")
app.add_typer(evaluate_app, name="evaluate")
app.add_typer(kernel_dump_app, name="kernel-dump")
app.add_typer(config_app, name="config")

"""Rich console for consistent terminal output."""

from __future__ import annotations

from typing import NoReturn

import typer
from rich.console import Console
from rich.theme import Theme

from qhc.cli import exit_codes
from qhc.utils.exceptions import QhcError

theme = Theme(
    {
        "info": "cyan",
        "success": "bold green",
        "warning": "bold yellow",
        "error": "bold red",
        "metric": "magenta",
    }
)

console = Console(theme=theme, stderr=False)
err_console = Console(theme=theme, stderr=True)


def abort(error: Exception, context: str = "Error") -> NoReturn:
    """Print ``error`` and exit with its code (1 for anything outside the qhc hierarchy)."""
    code = error.exit_code if isinstance(error, QhcError) else exit_codes.RUNTIME_ERROR
    err_console.print(f"[error]{context}: {error}[/error]")
    raise typer.Exit(code=code)

"""Entry point for python -m qhc."""

from qhc.cli import app

app()

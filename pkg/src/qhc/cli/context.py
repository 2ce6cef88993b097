"""Global CLI state shared across commands."""

from __future__ import annotations

from dataclasses import dataclass, field

from qhc.config.schema import RunConfig


@dataclass
class GlobalState:
    """Shared state populated in root @app.callback(), accessed by all commands."""

    verbose: bool = False
    config_path: str | None = None
    config: RunConfig = field(default_factory=RunConfig)


# Module-level singleton populated by the root callback
state = GlobalState()

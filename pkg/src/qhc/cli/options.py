"""Flag parsing shared by several commands."""

from __future__ import annotations

import typer


def parse_list(raw: str | None, kind: type[int] | type[float], flag: str) -> list | None:
    """Comma-separated numbers, e.g. ``0.05,0.1,0.2``."""
    if raw is None:
        return None
    try:
        return [kind(part) for part in raw.split(",") if part.strip()]
    except ValueError as e:
        msg = f"expected comma-separated numbers, got {raw!r}"
        raise typer.BadParameter(msg, param_hint=flag) from e

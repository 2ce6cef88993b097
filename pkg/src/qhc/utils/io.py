"""Atomic artifact writes."""

from __future__ import annotations

import logging
import os
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path
from typing import IO

from qhc.utils.exceptions import ArtifactError

logger = logging.getLogger(__name__)

# (temp file, target) pairs waiting for the enclosing staged_writes block to finish
_staged: ContextVar[list[tuple[str, Path]] | None] = ContextVar("_staged", default=None)


@contextmanager
def atomic_write(path: str | Path, mode: str = "w") -> Iterator[IO]:
    """Open a temp file next to ``path`` and move it into place on success.

    Nothing is left at ``path`` if the body raises. Inside ``staged_writes`` the move
    waits until the whole block has succeeded.

    Raises:
        ArtifactError: If the target directory cannot be created or written.
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    except OSError as e:
        raise ArtifactError(f"Cannot write {target}: {e}") from e

    try:
        with os.fdopen(fd, mode, newline="" if "b" not in mode else None) as handle:
            yield handle
        staged = _staged.get()
        if staged is not None:
            staged.append((tmp_name, target))
            logger.debug("Staged %s", target)
            return
        os.replace(tmp_name, target)
    except OSError as e:
        _discard(tmp_name)
        raise ArtifactError(f"Cannot write {target}: {e}") from e
    except BaseException:
        _discard(tmp_name)
        raise

    logger.debug("Wrote %s", target)


@contextmanager
def staged_writes() -> Iterator[None]:
    """Publish every ``atomic_write`` in the block together, or none of them.

    Raises:
        ArtifactError: If a staged file cannot be moved into place.
    """
    staged: list[tuple[str, Path]] = []
    token = _staged.set(staged)
    try:
        yield
    except BaseException:
        for tmp_name, _ in staged:
            _discard(tmp_name)
        raise
    finally:
        _staged.reset(token)

    for k, (tmp_name, target) in enumerate(staged):
        try:
            os.replace(tmp_name, target)
        except OSError as e:
            for leftover, _ in staged[k:]:
                _discard(leftover)
            raise ArtifactError(f"Cannot write {target}: {e}") from e
        logger.debug("Wrote %s", target)


def write_text(path: str | Path, text: str) -> None:
    """Atomically write a text file."""
    with atomic_write(path) as handle:
        handle.write(text)


def _discard(tmp_name: str) -> None:
    try:
        os.unlink(tmp_name)
    except FileNotFoundError:
        pass

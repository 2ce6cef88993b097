"""Configuration file discovery and loading."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from qhc.config.schema import RunConfig
from qhc.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

CONFIG_FILE_NAMES = [
    ".qhc.yaml",
    ".qhc.yml",
    ".qhc.json",
]

XDG_CONFIG_PATH = Path.home() / ".config" / "qhc" / "config.yaml"


def discover_config_file(explicit_path: str | None = None) -> Path | None:
    """Discover configuration file using the priority chain.

    Priority: explicit path > QHC_CONFIG env > cwd > XDG default.
    """
    # 1. Explicit path from CLI flag
    if explicit_path:
        path = Path(explicit_path)
        if path.is_file():
            return path
        raise ConfigError(f"Config file not found: {explicit_path}")

    # 2. Environment variable
    env_path = os.environ.get("QHC_CONFIG")
    if env_path:
        path = Path(env_path)
        if path.is_file():
            return path
        raise ConfigError(f"Config file from QHC_CONFIG not found: {env_path}")

    # 3. Current directory
    for name in CONFIG_FILE_NAMES:
        path = Path.cwd() / name
        if path.is_file():
            return path

    # 4. XDG default
    if XDG_CONFIG_PATH.is_file():
        return XDG_CONFIG_PATH

    # 5. No config file
    return None


def load_config(
    config_path: str | None = None,
    cli_overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Load configuration from file, env vars, and CLI overrides.

    JSON files are read through the YAML parser (JSON is a YAML subset).

    Args:
        config_path: Explicit path to config file.
        cli_overrides: Nested dict of CLI flag overrides; None values are ignored.

    Returns:
        Validated RunConfig instance.
    """
    file_path = discover_config_file(config_path)
    file_data: dict[str, Any] = {}

    if file_path:
        logger.debug("Loading config from: %s", file_path)
        try:
            with open(file_path) as f:
                file_data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse config file {file_path}: {e}") from e
        if not isinstance(file_data, dict):
            raise ConfigError(f"Config file {file_path} must hold a mapping")

    return _build(merge_overrides(file_data, cli_overrides or {}))


def apply_overrides(config: RunConfig, cli_overrides: dict[str, Any]) -> RunConfig:
    """Re-validate ``config`` with command-specific flag overrides on top."""
    base = config.model_dump(mode="json", by_alias=True, exclude_unset=True)
    return _build(merge_overrides(base, cli_overrides))


def merge_overrides(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Deep-merge ``overrides`` into a copy of ``base``, skipping None values."""
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            current = merged.get(key)
            nested = merge_overrides(current if isinstance(current, dict) else {}, value)
            if nested or key in merged:
                merged[key] = nested
        else:
            merged[key] = value
    return merged


def _build(data: dict[str, Any]) -> RunConfig:
    try:
        return RunConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e

"""Unit tests for the exception hierarchy and the exit codes it carries."""

from __future__ import annotations

import pytest

from qhc.cli import exit_codes
from qhc.utils.exceptions import (
    ArtifactError,
    ConfigError,
    DataError,
    KernelError,
    ParseError,
    QhcError,
    TrainingError,
    UsageError,
)


class TestExitCodes:
    @pytest.mark.parametrize("error", [ConfigError, UsageError, DataError])
    def test_usage_errors(self, error: type[QhcError]) -> None:
        assert error("bad").exit_code == exit_codes.USAGE_ERROR == 2

    @pytest.mark.parametrize("error", [ArtifactError, TrainingError, QhcError])
    def test_runtime_errors(self, error: type[QhcError]) -> None:
        assert error("failed").exit_code == exit_codes.RUNTIME_ERROR == 1

    def test_parse_error_is_a_usage_error(self) -> None:
        error = ParseError("not a number", line=7)
        assert error.exit_code == exit_codes.USAGE_ERROR
        assert error.line == 7
        assert str(error) == "line 7: not a number"

    def test_kernel_error_is_a_runtime_error(self) -> None:
        assert issubclass(KernelError, QhcError)
        assert KernelError.exit_code == exit_codes.RUNTIME_ERROR

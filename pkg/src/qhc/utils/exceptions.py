"""Exception hierarchy for qhc.

Every class carries the process exit code the CLI uses when it escapes a command.
"""

USAGE_EXIT_CODE = 2
RUNTIME_EXIT_CODE = 1


class QhcError(Exception):
    """Base exception for all qhc errors."""

    exit_code: int = RUNTIME_EXIT_CODE


class ConfigError(QhcError):
    """Configuration loading, validation, or precondition mismatch."""

    exit_code = USAGE_EXIT_CODE


class UsageError(QhcError):
    """An operation was called with arguments outside its contract."""

    exit_code = USAGE_EXIT_CODE


class DataError(QhcError):
    """Input data cannot be used (too few rows, single class, non-finite values)."""

    exit_code = USAGE_EXIT_CODE


class ParseError(DataError):
    """A CSV input file is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateInputError(DataError):
    """A vector cannot be encoded (zero norm)."""


class KernelError(QhcError):
    """A kernel entry could not be computed."""

    def __init__(self, message: str, rows: tuple[int, ...] = ()) -> None:
        self.rows = rows
        if rows:
            message = f"rows {', '.join(str(r) for r in rows)}: {message}"
        super().__init__(message)


class TrainingError(QhcError):
    """Training cannot proceed with the given inputs."""


class ArtifactError(QhcError):
    """Reading or writing a model, metrics, or dataset artifact failed."""

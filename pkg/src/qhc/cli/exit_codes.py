"""CLI exit code constants; error codes come from the exception hierarchy."""

from qhc.utils.exceptions import RUNTIME_EXIT_CODE, USAGE_EXIT_CODE

OK = 0
RUNTIME_ERROR = RUNTIME_EXIT_CODE
USAGE_ERROR = USAGE_EXIT_CODE

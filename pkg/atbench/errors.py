"""Exception hierarchy shared by every workbench module, plus CLI exit codes."""

from __future__ import annotations

from typing import Final

EXIT_OK: Final[int] = 0
EXIT_INTERNAL: Final[int] = 1
EXIT_VALIDATION: Final[int] = 2
EXIT_RESOURCE_LIMIT: Final[int] = 3
EXIT_INCONSISTENT: Final[int] = 4


class WorkbenchError(RuntimeError):
    """Base class for failures raised deliberately by the workbench."""

    exit_code: int = EXIT_INTERNAL


class ValidationError(WorkbenchError, ValueError):
    """Raised when an input object is malformed (non-bijective images, bad shapes)."""

    exit_code = EXIT_VALIDATION


class ContractError(ValidationError):
    """Raised when operands disagree on degree or variable space."""


class ResourceLimitError(WorkbenchError):
    """Raised when a request exceeds a configured or hard size limit."""

    exit_code = EXIT_RESOURCE_LIMIT


class InconsistencyError(WorkbenchError):
    """Raised when independently computed quantities that must agree do not."""

    exit_code = EXIT_INCONSISTENT


__all__ = [
    "EXIT_INCONSISTENT",
    "EXIT_INTERNAL",
    "EXIT_OK",
    "EXIT_RESOURCE_LIMIT",
    "EXIT_VALIDATION",
    "ContractError",
    "InconsistencyError",
    "ResourceLimitError",
    "ValidationError",
    "WorkbenchError",
]

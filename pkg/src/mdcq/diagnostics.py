"""Common diagnostic structures and errors shared across the pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal


Severity = Literal["info", "warning", "error"]

EXIT_OK = 0
EXIT_EXPECTATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXHAUSTED = 3


@dataclass(slots=True)
class Diagnostic:
    """Represents a message produced while building, verifying or searching."""

    severity: Severity
    message: str
    source_path: Path | None = None
    line: int | None = None
    field: str | None = None

    def to_dict(self) -> dict[str, object]:
        """Return a JSON-friendly dictionary representation."""

        return {
            "severity": self.severity,
            "message": self.message,
            "sourcePath": str(self.source_path) if self.source_path else None,
            "line": self.line,
            "field": self.field,
        }


class MdcqError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code: int = EXIT_INPUT_ERROR


class SpecError(MdcqError, ValueError):
    """Malformed graph spec, manifest or command-line input."""

    def __init__(
        self,
        message: str,
        *,
        field: str | None = None,
        line: int | None = None,
        source_path: Path | None = None,
    ) -> None:
        super().__init__(message)
        self.field = field
        self.line = line
        self.source_path = source_path

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(
            severity="error",
            message=str(self),
            source_path=self.source_path,
            line=self.line,
            field=self.field,
        )


class InvalidGraphError(MdcqError, ValueError):
    """A dimension vector, connection set or adjacency matrix violates its invariants."""


class NotAUnitError(InvalidGraphError):
    """A multiplier is not invertible modulo its coordinate modulus."""


class ShapeError(InvalidGraphError):
    """Dimension vector does not have the shape an operation requires."""


class BudgetExceeded(MdcqError):
    """Enumeration work would exceed the configured budget.

    ``partial`` carries whatever report was completed before the budget ran out.
    """

    exit_code = EXIT_BUDGET_EXHAUSTED

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial

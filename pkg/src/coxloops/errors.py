"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["ResourceLimitError", "DiagramError", "FormatError", "CheckError"]


class ResourceLimitError(RuntimeError):
    """An enumeration or search exceeded its configured cap/budget."""


class DiagramError(ValueError):
    """A Coxeter matrix or diagram failed validation."""


class FormatError(ValueError):
    """An input file failed to parse; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class CheckError(AssertionError):
    """A mathematical cross-check that should never fail did fail."""

"""Typed error hierarchy shared by all modules.

Domain violations raise :class:`DomainError` subclasses (CLI exit code 1);
malformed input files raise :class:`ParseError` (CLI exit code 2).
"""

from __future__ import annotations


class XCTError(Exception):
    """Base class for all library errors."""


class DomainError(XCTError):
    """A precondition or structural invariant was violated."""


class VariantMismatchError(DomainError):
    """Arithmetic between coefficients of different variants."""


class DimensionError(DomainError):
    """Matrix or tensor-leg dimension mismatch."""


class ValidationError(DomainError):
    """A diagram, tangle graph or code failed validation."""


class StaleSiteError(DomainError):
    """A move site no longer matches the diagram it was found in."""


class NoSiteError(DomainError):
    """A requested move has no applicable site in the diagram."""


class NonScalarError(DomainError):
    """A one-strand invariant value was not a scalar multiple of the identity."""

    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


class GuardrailError(DomainError):
    """An evaluation would exceed the configured size guardrail."""


class ParseError(XCTError):
    """Malformed textual input; carries line/column information."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

"""Exception hierarchy shared by every engine."""

from __future__ import annotations


class ArtifactError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(ArtifactError):
    """Malformed ring, ideal or filtration text."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class StructuralError(ArtifactError):
    """Operands that do not live in the same ring, or malformed data."""


class UnsupportedError(ArtifactError):
    """The requested computation is outside what the engines can decide."""


class PreconditionError(ArtifactError):
    """A mathematical hypothesis of an operation does not hold."""


class CertificateError(ArtifactError):
    """Stored certificate data is inconsistent (for example a broken witness chain)."""


class BudgetExceeded(ArtifactError):
    """A resource budget was hit; ``partial`` carries the state reached so far."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


__all__ = [
    "ArtifactError",
    "ParseError",
    "StructuralError",
    "UnsupportedError",
    "PreconditionError",
    "CertificateError",
    "BudgetExceeded",
]

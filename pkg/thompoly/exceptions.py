"""Custom exceptions for the thompoly package."""

from __future__ import annotations


class ThomPolyError(Exception):
    """Base exception for thompoly."""


class UsageError(ThomPolyError):
    """Exception raised when an operation is called with incompatible arguments."""


class DomainError(ThomPolyError):
    """Exception raised when an input lies outside an operation's domain."""


class ValidationError(ThomPolyError):
    """Exception raised when registry data fails validation."""

    def __init__(self, message: str, diagnostics: list[str] | None = None) -> None:
        """Initialize with the list of per-field diagnostics."""
        super().__init__(message)
        self.diagnostics = diagnostics or []


class UnknownTypeError(ThomPolyError):
    """Exception raised when a singularity type or pipeline is not known."""


class MalformedCharactersError(ThomPolyError):
    """Exception raised when projective characters cannot be parsed."""


class SolverError(ThomPolyError):
    """Exception raised when the restriction system cannot be solved."""


class InconsistentSystemError(SolverError):
    """Exception raised when the linear system has no solution."""

    def __init__(self, message: str, row: str, pivot: str | None) -> None:
        """Initialize with the conflicting row and the pivot row it hit."""
        super().__init__(message)
        self.row = row
        self.pivot = pivot


class UnderdeterminedSystemError(SolverError):
    """Exception raised when the linear system leaves free unknowns."""

    def __init__(self, message: str, kernel_dim: int) -> None:
        """Initialize with the dimension of the solution space."""
        super().__init__(message)
        self.kernel_dim = kernel_dim


class ModulusDirectionError(SolverError):
    """Exception raised when a type has a zero weight normal direction."""


class IntegralityError(SolverError):
    """Exception raised when a solved coefficient is not an integer."""


class EmptyLocusError(ThomPolyError):
    """Exception raised when a locus is empty for dimension reasons."""


class IncompleteSpecError(ThomPolyError):
    """Exception raised when a pushforward rule is missing."""

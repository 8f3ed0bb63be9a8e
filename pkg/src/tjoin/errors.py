"""Exception types shared across the package."""

from __future__ import annotations


class TJoinError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TJoinError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(TJoinError):
    """Input is well formed but outside the class an algorithm accepts (CLI exit code 3)."""


class SizeLimitError(InputError):
    """A brute-force routine was asked to run beyond its hard size cap."""

"""Exception types shared across the package."""

from __future__ import annotations


class MknfError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MknfError):
    """Syntax error in a knowledge-base or query source text."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class ValidationError(MknfError):
    """A knowledge base violates a structural invariant.

    Carries the full diagnostic list; str() shows the first few.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics[:5])
        super().__init__(lines or "validation failed")


class CompileError(MknfError):
    """Error during constraint compilation, negation elimination or doubling."""


class GroundingLimitError(MknfError):
    """Instantiating the program would exceed the ground-rule budget."""


class EnumerationLimitError(MknfError):
    """The brute-force model enumerator was given too many atoms."""

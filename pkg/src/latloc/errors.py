"""Exception types shared across the toolkit."""

from __future__ import annotations


class LatlocError(Exception):
    """Base class for all toolkit errors."""


class TraceFormatError(LatlocError):
    """Malformed trace file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContextError(LatlocError):
    """Unknown object/attribute or degenerate formal context."""


class LatticeTooLargeError(LatlocError):
    """Concept enumeration exceeded the configured cap."""


class IndicatorUndefinedError(LatlocError):
    """Confidence or lift is undefined (empty premise/conclusion extent)."""


class MiningError(LatlocError):
    """Invalid mining request (threshold out of range, no failing tests...)."""


class SessionError(LatlocError):
    """Invalid exploration-session operation."""


class BlockTraceError(LatlocError):
    """A sequence is inconsistent with the block decomposition."""


class CorpusError(LatlocError):
    """Invalid reference-program or suite specification."""

"""Shared exception types."""

from __future__ import annotations


class ParseError(ValueError):
    """An input file or location string could not be parsed.

    Carries optional ``source`` (file name or description) and ``line``
    (1-based line number) so callers can report where the problem is.
    """

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        prefix = ""
        if self.source is not None:
            prefix = self.source
        if self.line is not None:
            prefix = f"{prefix}:{self.line}" if prefix else f"line {self.line}"
        msg = super().__str__()
        return f"{prefix}: {msg}" if prefix else msg

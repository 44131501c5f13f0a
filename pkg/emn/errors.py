"""Exception types shared by the library and the CLI."""

from __future__ import annotations

from typing import Optional


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.message = message
        self.offset = offset


class UnsupportedSizeError(ValueError):
    pass


class RotationFormatError(ValueError):
    """Malformed .rot input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search refused to start, or stopped, because of a configured budget."""

    def __init__(self, message: str, size: Optional[int] = None):
        super().__init__(message)
        self.size = size

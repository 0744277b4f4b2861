from __future__ import annotations


class PlumbkitError(Exception):
    """Base class for errors raised by this package."""


class GraphError(PlumbkitError, ValueError):
    """A graph document or graph value violates the data-model invariants.

    ``code`` is one of ``syntax``, ``duplicate-id``, ``dangling-edge``,
    ``negative-genus``, ``self-loop``, ``empty-leg`` or ``bad-argument``.
    ``line``/``column`` are 1-based and present when the error came from
    parsing text.
    """

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"{self.line}:{self.column}: " if self.line is not None else ""
        return f"{where}{self.code}: {self.message}"


class PreconditionError(PlumbkitError, ValueError):
    """An operation was called on a graph outside its domain."""

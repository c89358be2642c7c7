"""Shared exception types."""

from __future__ import annotations


class DigraphParseError(ValueError):
    """Digraph text that does not conform to the file format.

    The 1-based line number of the offending line is kept in ``line_no``.
    """

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NotRectangularError(ValueError):
    """An operation that requires a rectangular digraph was given a non-rectangular one.

    ``witness`` is a quadruple ``(x, y, x2, y2)`` such that ``(x, y)``,
    ``(x2, y)`` and ``(x2, y2)`` are edges while ``(x, y2)`` is not.
    """

    def __init__(self, witness: tuple[int, int, int, int]) -> None:
        x, y, x2, y2 = witness
        super().__init__(
            f"not rectangular: ({x},{y}), ({x2},{y}), ({x2},{y2}) are edges "
            f"but ({x},{y2}) is not"
        )
        self.witness = witness


class NotMaltsevError(ValueError):
    """Synthesis was asked to build a polymorphism for a digraph that has none.

    The refusal certificate from the decision procedure is kept in
    ``certificate``.
    """

    def __init__(self, certificate) -> None:
        super().__init__(
            "digraph admits no Maltsev polymorphism "
            f"(rectangularity fails at factoring level {certificate.level})"
        )
        self.certificate = certificate


class InternalInvariantError(RuntimeError):
    """A state the underlying theory rules out: a bug, not bad input."""

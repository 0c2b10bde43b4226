"""Shared exception types."""


class PreconditionError(ValueError):
    """An operation refused because its mathematical precondition fails."""


class ParseError(ValueError):
    """Polynomial or system text failed to parse; carries the position."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")

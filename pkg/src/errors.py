"""Exception hierarchy for the free *-algebra toolkit."""

from typing import Optional


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(ToolkitError, ValueError):
    """Polynomial text does not conform to the expression grammar."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(ToolkitError, ValueError):
    """An operation was called outside the inputs it is defined for."""


class DegreeBoundError(PreconditionError):
    """A degree exceeds the certified truncation bound."""


class ImproperIdealError(PreconditionError):
    """The ideal contains 1."""


class FieldMismatchError(PreconditionError):
    """Operands live over different variable counts or scalar fields."""


class ConstructionError(ToolkitError, RuntimeError):
    """An internal certificate could not be produced."""


class ConfigError(ToolkitError, ValueError):
    """An environment setting has an invalid value."""

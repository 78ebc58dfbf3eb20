"""Shared error types."""


class PlantopoError(Exception):
    """Base class for all package-specific failures."""


class ResourceExhausted(PlantopoError):
    """A configured node/state/evaluation budget was exceeded."""


class UnsupportedFeature(PlantopoError):
    """Input uses a language feature outside the supported STRIPS subset."""


class ParseError(PlantopoError):
    """Malformed input text; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class PreconditionViolated(PlantopoError):
    """An operation's documented precondition does not hold."""


class NoReferencePlan(PlantopoError):
    """No reference plan could be found to calibrate random-walk lengths."""


class Truncated(PlantopoError):
    """An analysis structure was cut off by its node cap."""

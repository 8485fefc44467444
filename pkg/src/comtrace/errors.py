"""Exception hierarchy shared by every module."""


class ComtraceError(Exception):
    """Base class for all library errors."""


class AlphabetError(ComtraceError, ValueError):
    """An alphabet violates sim/ser constraints or names an unknown event."""


class ParseError(ComtraceError, ValueError):
    """Malformed text input. ``position`` is a 0-based offset or 1-based line."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class InvalidStructureError(ComtraceError, ValueError):
    """A structure fails the axioms required by the operation."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ResourceLimitError(ComtraceError):
    """An enumeration would exceed its configured bound."""

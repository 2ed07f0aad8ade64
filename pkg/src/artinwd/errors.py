"""Exception hierarchy shared by every layer of the package."""


class ArtinError(Exception):
    """Base class for all errors raised by artinwd."""


class ValidationError(ArtinError, ValueError):
    """Input data violates a structural or arithmetic invariant."""


class ParseError(ValidationError):
    """Malformed literal or fixture document.

    ``location`` is a human readable ``file:line`` or ``section.key`` string,
    prepended to the message when present.
    """

    def __init__(self, message, location=None):
        self.location = location
        self.bare_message = message
        super().__init__(f"{location}: {message}" if location else message)


class AmbiguityError(ArtinError):
    """A mathematically determined quantity could not be pinned down
    (typically a Frobenius conjugacy class)."""


class InconsistencyError(ArtinError):
    """Two independent computations of the same quantity disagree."""

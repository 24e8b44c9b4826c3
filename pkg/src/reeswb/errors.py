"""Exception types shared across the package."""


class ReesError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(ReesError):
    """Bad characteristic or a coefficient with no image in the field."""


class ParseError(ReesError):
    """Malformed polynomial or scenario text."""


class RingMismatch(ReesError):
    """Operands live in different polynomial rings."""


class ResourceError(ReesError):
    """A bounded enumeration exceeded its cap."""


class PreconditionError(ReesError):
    """An operation was called outside its domain (center not in Sing, point not in Sing, ...)."""


class StateError(ReesError):
    """A driver or invariant routine reached a state it cannot continue from."""


class ProviderError(ReesError):
    """An elimination table entry is missing or fails its checks."""

    def __init__(self, message, key=None, check=None):
        super().__init__(message)
        self.key = key
        self.check = check

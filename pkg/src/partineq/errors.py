"""Exception types shared across the package."""


class PartineqError(Exception):
    """Base class for all errors raised by partineq."""


class ValidationError(PartineqError, ValueError):
    """A parameter set violates its documented constraints."""


class UnsupportedSpecError(ValidationError):
    """The operation only handles a narrower family of product specs."""


class ResourceError(PartineqError, MemoryError):
    """A request would exceed the configured memory or enumeration budget."""


class OutOfRangeError(PartineqError, IndexError):
    """A coefficient was requested beyond the truncation order."""


class TruncationMismatch(PartineqError, ValueError):
    """Two tables with different truncation orders were combined."""

"""Exception types raised by twinsieve."""


class TwinSieveError(Exception):
    """Base class for all library errors."""


class DomainError(TwinSieveError, ValueError):
    """Input outside the 6n-1 / 6n+1 domain an operation accepts."""


class ArithmeticRangeError(TwinSieveError, OverflowError):
    """Value would not fit in an unsigned 64-bit word."""


class CertificateError(TwinSieveError, RuntimeError):
    """A witness failed its own product check (construction bug)."""


class ResourceError(TwinSieveError, MemoryError):
    """Requested work exceeds the configured memory budget."""


class EmptyInputError(TwinSieveError, ValueError):
    """No blocked index exists in the requested range."""

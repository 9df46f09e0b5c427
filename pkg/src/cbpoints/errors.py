"""Exception hierarchy shared by every module of the package."""


class CbError(Exception):
    """Base class for all errors raised by cbpoints."""


class NotPrime(CbError, ValueError):
    pass


class TooSmall(CbError, ValueError):
    pass


class ZeroForm(CbError, ValueError):
    """A binary form that is identically zero was passed where roots are needed."""


class DimensionMismatch(CbError, ValueError):
    pass


class BasePoint(CbError, ValueError):
    """All components of a parametrization vanish at the requested parameter."""


class DegenerateSpan(CbError, ValueError):
    pass


class DuplicatePoint(CbError, ValueError):
    pass


class TooFew(CbError, ValueError):
    pass


class AllCollinear(CbError, ValueError):
    pass


class CapacityExceeded(CbError, ValueError):
    pass


class RetriesExhausted(CbError, RuntimeError):
    pass


class EmptyKernel(CbError, RuntimeError):
    pass


class OutOfRange(CbError, ValueError):
    pass


class InternalError(CbError, RuntimeError):
    pass


class MalformedFile(CbError, ValueError):
    """Raised by the point-file reader; carries the offending line number."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno

"""Exception types shared across the library."""


class PolyGinibreError(Exception):
    """Base class for all library errors."""


class NonConvergent(PolyGinibreError):
    """A series or quadrature exhausted its budget before meeting tolerance."""


class InvalidParameters(PolyGinibreError):
    """Parameters hit a pole or violate a domain constraint."""


class AccuracyLoss(PolyGinibreError):
    """An alternating sum cancelled too many digits to be trustworthy.

    Callers are expected to fall back to a quadrature route.
    """

    def __init__(self, message, digits=None, value=None):
        super().__init__(message)
        self.digits = digits
        self.value = value


class BudgetExceeded(PolyGinibreError):
    """A truncation index would exceed its configured cap."""


class EnvelopeViolation(PolyGinibreError):
    """Rejection-sampling density exceeded its estimated envelope."""


class InsufficientData(PolyGinibreError):
    """Too few samples to form the requested estimate."""

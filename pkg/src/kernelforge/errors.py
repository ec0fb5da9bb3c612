"""Exception hierarchy shared by all kernelforge modules."""


class KernelforgeError(Exception):
    """Base class for all library errors."""


class DomainError(KernelforgeError):
    """Arguments outside the mathematical domain of an operation."""


class ConvergenceError(KernelforgeError):
    """A series or iteration hit its term cap before meeting tolerance."""

    def __init__(self, message, terms_used=None, tail_estimate=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.tail_estimate = tail_estimate


class QuadratureError(ConvergenceError):
    """Adaptive quadrature failed to meet the requested tolerance."""


class DivisibilityError(KernelforgeError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ConditioningError(KernelforgeError):
    """A Gram block is too ill-conditioned to invert reliably."""

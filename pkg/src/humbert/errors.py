"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a function is defined or validated."""


class TruncationError(ArithmeticError):
    """A series did not meet its stopping rule within the term budget.

    The partial result is kept on the exception so callers can inspect it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureBudgetError(ArithmeticError):
    """Adaptive quadrature ran out of integrand evaluations."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best

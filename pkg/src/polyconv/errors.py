"""Exception types shared across the package."""


class PolyconvError(Exception):
    """Base class for all package errors."""


class ContractViolation(PolyconvError, ValueError):
    """An argument broke a documented precondition (shape, length, corner entry)."""


class InvalidParameter(PolyconvError, ValueError):
    """A basis parameter lies outside its admissible range."""


class PoleError(PolyconvError, ValueError):
    """A gamma function argument is a nonpositive integer."""


class NotPsd(PolyconvError, ArithmeticError):
    """The matrix handed to pivoted Cholesky is not positive semidefinite."""


class RankCapExceeded(PolyconvError, RuntimeError):
    """Pivoted Cholesky did not reach its tolerance within ``max_rank`` steps.

    The partial factor is kept on the ``factor`` attribute.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor

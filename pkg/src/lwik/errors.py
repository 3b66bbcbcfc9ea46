"""Exception types shared across the library.

Numerical routines never return inf/nan: a value that cannot be produced in
finite double precision is reported through one of these exceptions instead.
"""


class LwikError(Exception):
    """Base class for all library errors."""


class DomainError(LwikError, ValueError):
    """Input lies outside the region of validity of the requested operation."""


class ConvergenceError(LwikError, RuntimeError):
    """An iterative solver failed to meet its residual tolerance."""


class NonFiniteError(LwikError, ArithmeticError):
    """An integrand or intermediate produced a non-finite value."""


class NotConvergedError(LwikError, RuntimeError):
    """A quadrature-backed evaluation exhausted its refinement budget.

    The partial result, when available, is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class PoleError(LwikError, ZeroDivisionError):
    """Evaluation requested exactly at a pole of the function."""


class SingularSystemError(LwikError, RuntimeError):
    """A linear system (e.g. Pade denominator equations) is singular."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class StepTooSmallError(LwikError, ArithmeticError):
    """Finite-difference step lost all significant digits to cancellation."""

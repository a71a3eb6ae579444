"""Exceptions raised by crankforge.

Every error condition named by an operation maps to one subclass of
:exc:`CrankForgeError`, so a caller can catch all library failures with a
single ``except`` clause::

    try:
        table = crankforge.combinatorics.crank_table_bruteforce(2, 60)
    except crankforge.exc.CrankForgeError as err:
        print(f"crankforge error: {err}")

Argument-domain errors (for example ``k = 0``) are not listed here: public
operations validate their integer arguments with :func:`pydantic.validate_call`
and raise :exc:`pydantic.ValidationError`.
"""

import fractions
import typing

__all__ = [
    "CrankForgeError",
    "ZeroConstantTermError",
    "NonUnitProductError",
    "EnumerationBudgetExceededError",
    "PreconditionViolatedError",
    "NoSolutionWithinTruncationError",
    "InsufficientTruncationError",
    "NonIntegerCoefficientsError",
    "TailBoundExceededError",
    "LevelViolationError",
]


class CrankForgeError(Exception):
    """Base exception for all crankforge errors.

    Catch this exception to handle any library error in a generic manner.

    See Also
    --------
    NoSolutionWithinTruncationError : Failed span membership
    EnumerationBudgetExceededError : Brute-force guard
    """


class ZeroConstantTermError(CrankForgeError, ZeroDivisionError):
    """A power series with vanishing constant term was inverted."""


class NonUnitProductError(CrankForgeError):
    """A q-Pochhammer product would have a zero constant term.

    Raised for a factor ``(a; q^d)_inf`` with ``a = +1``, whose first factor
    ``1 - a`` is zero.
    """


class EnumerationBudgetExceededError(CrankForgeError):
    """A brute-force enumeration was requested above its size guard.

    Attributes
    ----------
    requested : int
        The weight that was asked for.
    limit : int
        The largest weight the guard admits.
    """

    def __init__(self, requested: int, limit: int) -> None:
        self.requested = requested
        self.limit = limit
        super().__init__(f"Enumeration up to n={requested} exceeds the limit n<={limit}.")


class PreconditionViolatedError(CrankForgeError):
    """An input violated an operation's precondition.

    Attributes
    ----------
    offending : Any
        The value (usually a single part of a partition) that failed the check.
    """

    def __init__(self, message: str, offending: typing.Any = None) -> None:
        self.offending = offending
        super().__init__(message)


class NoSolutionWithinTruncationError(CrankForgeError):
    """A target series is not a combination of the span through the truncation order.

    The failure is inconclusive for membership in the underlying space: the
    declared spanning set is not proven to span it.

    Attributes
    ----------
    order : int
        The first power of ``q`` whose coefficient equation is inconsistent.
    """

    def __init__(self, order: int, message: typing.Optional[str] = None) -> None:
        self.order = order
        super().__init__(message or f"No combination of the span matches the target through q^{order}.")


class InsufficientTruncationError(CrankForgeError):
    """Too few coefficients were requested to pin down coordinates in a span."""


class NonIntegerCoefficientsError(CrankForgeError):
    """A representation that must have integer coefficients produced a fraction.

    Attributes
    ----------
    coefficients : dict
        The full coordinate mapping that failed the integrality check.
    """

    def __init__(self, coefficients: typing.Mapping[str, fractions.Fraction]) -> None:
        self.coefficients = dict(coefficients)
        bad = {key: str(value) for key, value in self.coefficients.items() if value.denominator != 1}
        super().__init__(f"Non-integer coefficients in representation: {bad}")


class TailBoundExceededError(CrankForgeError):
    """A truncated q-expansion was evaluated too close to the real axis.

    Attributes
    ----------
    bound : float
        The estimated size of the discarded tail.
    """

    def __init__(self, bound: float, message: str) -> None:
        self.bound = bound
        super().__init__(message)


class LevelViolationError(CrankForgeError):
    """A matrix outside the form's congruence subgroup was used."""

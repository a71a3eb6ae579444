"""Exact Gauss-Jordan elimination over the rationals.

Equations are fed one at a time, in the order of the power of ``q`` they
come from, so the first inconsistent equation identifies the first
coefficient at which no combination of the span can match the target.

Rows are numpy object arrays of :class:`fractions.Fraction`; every update is
exact.

Example:
    >>> from fractions import Fraction
    >>> from crankforge.linalg import IncrementalSolver
    >>> solver = IncrementalSolver(2)
    >>> solver.add_equation([1, 1], 3, order=0)
    True
    >>> solver.add_equation([1, -1], 1, order=1)
    True
    >>> solver.solution()
    [Fraction(2, 1), Fraction(1, 1)]
"""

import fractions
import logging
import typing

import numpy as np

from . import exc

logger = logging.getLogger(__name__)

__all__ = ["IncrementalSolver", "solve"]


def _fraction_row(values: typing.Iterable[typing.Union[int, fractions.Fraction]]) -> np.ndarray:
    return np.array([fractions.Fraction(v) for v in values], dtype=object)


class IncrementalSolver:
    """Reduced row echelon form of a growing linear system ``A x = b``.

    Parameters
    ----------
    ncols : int
        Number of unknowns.

    Notes
    -----
    Pivot rows are kept fully reduced (zero in every other pivot column), so
    :meth:`solution` reads the particular solution with every free unknown
    set to zero.
    """

    def __init__(self, ncols: int) -> None:
        if ncols < 0:
            raise ValueError(f"ncols must be >= 0, got {ncols}")
        self.ncols = ncols
        self._pivots: dict[int, tuple[np.ndarray, fractions.Fraction]] = {}
        self.equations = 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivot_columns(self) -> list[int]:
        return sorted(self._pivots)

    def _reduce(self, row: np.ndarray, rhs: fractions.Fraction) -> tuple[np.ndarray, fractions.Fraction]:
        for column, (pivot_row, pivot_rhs) in self._pivots.items():
            factor = row[column]
            if factor:
                row = row - factor * pivot_row
                rhs = rhs - factor * pivot_rhs
        return row, rhs

    def add_equation(
        self,
        coeffs: typing.Sequence[typing.Union[int, fractions.Fraction]],
        rhs: typing.Union[int, fractions.Fraction],
        order: typing.Optional[int] = None,
    ) -> bool:
        """Add ``coeffs . x = rhs``.

        Returns
        -------
        bool
            ``True`` if the system stays consistent. A redundant equation is
            accepted and changes nothing.

        Raises
        ------
        NoSolutionWithinTruncationError
            If ``order`` is given and the equation contradicts the previous ones.
        """
        if len(coeffs) != self.ncols:
            raise ValueError(f"expected {self.ncols} coefficients, got {len(coeffs)}")
        self.equations += 1
        row, value = self._reduce(_fraction_row(coeffs), fractions.Fraction(rhs))
        column = next((i for i, entry in enumerate(row) if entry), None)
        if column is None:
            if value == 0:
                return True
            if order is not None:
                raise exc.NoSolutionWithinTruncationError(order)
            return False
        pivot = row[column]
        row = row / pivot
        value = value / pivot
        for other, (other_row, other_rhs) in list(self._pivots.items()):
            factor = other_row[column]
            if factor:
                self._pivots[other] = (other_row - factor * row, other_rhs - factor * value)
        self._pivots[column] = (row, value)
        logger.debug(f"Pivot on column {column} after {self.equations} equations (rank {self.rank})")
        return True

    def solution(self) -> list[fractions.Fraction]:
        """Particular solution with free unknowns set to zero."""
        out = [fractions.Fraction(0)] * self.ncols
        for column, (_, value) in self._pivots.items():
            out[column] = value
        return out


def solve(
    rows: typing.Iterable[typing.Sequence[typing.Union[int, fractions.Fraction]]],
    rhs: typing.Iterable[typing.Union[int, fractions.Fraction]],
    ncols: int,
    orders: typing.Optional[typing.Iterable[int]] = None,
) -> IncrementalSolver:
    """Solve ``A x = b`` exactly, one equation at a time.

    Returns the solver, so callers read both :meth:`IncrementalSolver.solution`
    and :attr:`IncrementalSolver.rank`.

    Parameters
    ----------
    rows, rhs : iterables
        The equations, consumed together.
    ncols : int
        Number of unknowns.
    orders : iterable of int, optional
        Label attached to each equation and reported on inconsistency;
        defaults to the equation index.

    Raises
    ------
    NoSolutionWithinTruncationError
        Carrying the label of the first inconsistent equation.
    """
    solver = IncrementalSolver(ncols)
    labels = iter(orders) if orders is not None else None
    for index, (row, value) in enumerate(zip(rows, rhs, strict=True)):
        label = next(labels) if labels is not None else index
        solver.add_equation(row, value, order=label)
    return solver

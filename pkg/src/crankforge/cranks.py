"""Two-variable crank generating functions and their moments.

The ordinary crank series is

    C(z; q) = (q; q)_inf / ((zq; q)_inf (q/z; q)_inf)

and the k-th residual crank series of overpartitions is

    Cbar[k](z; q) = Pbar(q) (q^k; q^k)_inf C(z; q^k).

Rows of a :class:`ZLaurentSeries` hold the Laurent polynomial in ``z``
attached to each power of ``q``; moments apply ``(z d/dz)^ell`` to every row
and set ``z = 1``.

Example:
    >>> from crankforge import cranks
    >>> cranks.crank_series(1).row_dict(1)
    {-1: 1, 0: -1, 1: 1}
    >>> [int(c) for c in cranks.moment_series(1, 2, 3).series.coeffs]
    [0, 2, 10, 28]
"""

import dataclasses
import fractions
import functools
import logging
import math
import typing

import pydantic

from . import combinatorics, qseries, types
from .types import field_types

logger = logging.getLogger(__name__)

__all__ = [
    "ZLaurentSeries",
    "MomentSeries",
    "crank_series",
    "crank_product",
    "first_residual_crank_product",
    "second_residual_crank_product",
    "residual_crank_series",
    "crank_table_from_series",
    "crank_table_ordinary",
    "moment_series",
    "positive_moment",
    "moment_from_cumulants",
    "crank_equidistribution",
    "inequality_scan",
    "monotonicity_scan",
]

Row = list[int]


@dataclasses.dataclass(frozen=True, eq=False)
class ZLaurentSeries:
    """Laurent polynomials in ``z`` for each power ``q^n``, ``n <= trunc_order``.

    Row ``n`` is stored densely with ``2n + 1`` integer coefficients, index
    ``m + n`` holding ``[z^m q^n]``.
    """

    trunc_order: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.trunc_order + 1:
            raise ValueError(f"expected {self.trunc_order + 1} rows, got {len(self.rows)}")
        for n, row in enumerate(self.rows):
            if len(row) != 2 * n + 1:
                raise ValueError(f"row {n} must have {2 * n + 1} entries, got {len(row)}")

    def coefficient(self, m: int, n: int) -> int:
        if abs(m) > n:
            return 0
        return self.rows[n][m + n]

    def row_dict(self, n: int) -> dict[int, int]:
        """Nonzero coefficients of row ``n`` keyed by the power of ``z``."""
        return {m - n: value for m, value in enumerate(self.rows[n]) if value}

    def at_one(self) -> qseries.Series:
        """Set ``z = 1``."""
        return qseries.Series(self.trunc_order, tuple(sum(row) for row in self.rows))

    def moment(self, ell: int) -> qseries.Series:
        """``(z d/dz)^ell`` applied row-wise, then ``z = 1``."""
        return qseries.Series(
            self.trunc_order,
            tuple(
                sum((m - n) ** ell * value for m, value in enumerate(row) if value) for n, row in enumerate(self.rows)
            ),
        )

    def positive_moment(self, ell: int) -> qseries.Series:
        """Like :meth:`moment`, restricted to powers ``z^m`` with ``m >= 1``."""
        return qseries.Series(
            self.trunc_order,
            tuple(
                sum(m**ell * value for m, value in enumerate(row[n + 1 :], start=1)) for n, row in enumerate(self.rows)
            ),
        )

    def truncate(self, trunc_order: int) -> "ZLaurentSeries":
        if trunc_order > self.trunc_order:
            raise ValueError(f"cannot extend rows known through q^{self.trunc_order} to q^{trunc_order}")
        return ZLaurentSeries(trunc_order, self.rows[: trunc_order + 1])

    def first_difference(self, other: "ZLaurentSeries") -> typing.Optional[int]:
        """Smallest ``n`` whose rows differ, up to the common order."""
        return next((n for n, (a, b) in enumerate(zip(self.rows, other.rows, strict=False)) if a != b), None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZLaurentSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def to_crank_table(
        self,
        k: int,
        objects: typing.Literal["overpartitions", "partitions"] = "overpartitions",
    ) -> combinatorics.CrankTable:
        return combinatorics.CrankTable.from_columns(
            k,
            [self.row_dict(n) for n in range(self.trunc_order + 1)],
            objects=objects,
        )


@dataclasses.dataclass(frozen=True)
class MomentSeries:
    """``sum_n (sum_m m^ell M[k](m, n)) q^n``, one-sided when ``positive`` is set."""

    k: int
    ell: int
    series: qseries.Series
    positive: bool = False

    def __post_init__(self) -> None:
        if self.ell % 2 and not self.positive and not self.series.is_zero():
            raise ValueError(f"odd moment ell={self.ell} of a symmetric table must vanish")

    def coefficient(self, n: int) -> int:
        value = self.series.coefficient(n)
        return value.numerator if value.denominator == 1 else int(value)


# ----------------------------------------------------------------------
# Row kernels
# ----------------------------------------------------------------------


def _empty_rows(trunc: int) -> list[Row]:
    return [[0] * (2 * n + 1) for n in range(trunc + 1)]


def _add_row(dst: Row, dst_n: int, src: Row, src_n: int, shift: int = 0, scale: int = 1) -> None:
    """``dst += scale * z^shift * src`` for dense rows centred at ``dst_n`` and ``src_n``."""
    offset = dst_n - src_n + shift
    for j, value in enumerate(src):
        if value:
            dst[offset + j] += scale * value


def _geometric_pass(rows: list[Row], step: int, shift: int) -> None:
    """Multiply in place by ``1 / (1 - z^shift q^step)``."""
    for n in range(step, len(rows)):
        _add_row(rows[n], n, rows[n - step], n - step, shift=shift)


def _euler_pass(rows: list[Row], step: int) -> None:
    """Multiply in place by ``1 - q^step``."""
    for n in range(len(rows) - 1, step - 1, -1):
        _add_row(rows[n], n, rows[n - step], n - step, scale=-1)


def _series_times_rows(series: qseries.Series, rows: typing.Sequence[typing.Sequence[int]], trunc: int) -> list[Row]:
    """Multiply z-free ``series`` (integer coefficients) by the rows."""
    if not series.is_integral():
        raise ValueError("only integral series can multiply integer rows")
    factor = [int(c) for c in series.coeffs]
    out = _empty_rows(trunc)
    for t, row in enumerate(rows[: trunc + 1]):
        if not any(row):
            continue
        for n in range(t, trunc + 1):
            if factor[n - t]:
                _add_row(out[n], n, list(row), t, scale=factor[n - t])
    return out


def _freeze(trunc: int, rows: typing.Sequence[Row]) -> ZLaurentSeries:
    return ZLaurentSeries(trunc, tuple(tuple(row) for row in rows))


# ----------------------------------------------------------------------
# Product expansions
# ----------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _crank_series(trunc: int) -> ZLaurentSeries:
    rows = _empty_rows(trunc)
    rows[0][0] = 1
    for i in range(1, trunc + 1):
        _geometric_pass(rows, i, 1)
        _geometric_pass(rows, i, -1)
        _euler_pass(rows, i)
    logger.debug(f"Expanded the crank series through q^{trunc}")
    return _freeze(trunc, rows)


@pydantic.validate_call
def crank_series(trunc: field_types.NaturalIntT) -> ZLaurentSeries:
    """Expand ``(q; q)_inf / ((zq; q)_inf (q/z; q)_inf)`` through ``q^trunc``.

    Each factor ``1 / (1 - z^(+-1) q^i)`` is applied as a geometric series and
    each ``1 - q^i`` as a single shifted subtraction, so row ``n`` never
    leaves the window ``|m| <= n``.
    """
    return _crank_series(trunc)


@pydantic.validate_call
def crank_product(
    numerator: pydantic.SkipValidation[qseries.Series],
    d: field_types.PositiveIntT,
    trunc: field_types.NaturalIntT,
) -> ZLaurentSeries:
    """Expand ``numerator(q) / ((zq^d; q^d)_inf (q^d/z; q^d)_inf)`` directly.

    This is a pipeline independent of :func:`residual_crank_series`: the
    ``z`` factors are applied at step ``d`` and the numerator is multiplied
    in afterwards.
    """
    if numerator.trunc_order < trunc:
        raise ValueError(f"numerator is only known through q^{numerator.trunc_order}")
    rows = _empty_rows(trunc)
    rows[0][0] = 1
    for step in range(d, trunc + 1, d):
        _geometric_pass(rows, step, 1)
        _geometric_pass(rows, step, -1)
    return _freeze(trunc, _series_times_rows(numerator, rows, trunc))


def first_residual_crank_product(trunc: int) -> ZLaurentSeries:
    """``(-q, q; q)_inf / (zq, q/z; q)_inf``."""
    numerator = qseries.pochhammer(
        qseries.PochhammerSpec((qseries.PochhammerFactor(1, -1), qseries.PochhammerFactor(1))),
        trunc,
    )
    return crank_product(numerator, 1, trunc)


def second_residual_crank_product(trunc: int) -> ZLaurentSeries:
    """``(-q; q)_inf (q^2; q^2)_inf / ((q; q^2)_inf (zq^2, q^2/z; q^2)_inf)``."""
    distinct = qseries.pochhammer(qseries.PochhammerSpec((qseries.PochhammerFactor(1, -1),)), trunc)
    odd_euler = qseries.pochhammer(qseries.PochhammerSpec((qseries.PochhammerFactor(1),), modulus=2), trunc)
    even_euler = qseries.pochhammer(qseries.PochhammerSpec((qseries.PochhammerFactor(2),), modulus=2), trunc)
    return crank_product(distinct * qseries.series_inverse(odd_euler) * even_euler, 2, trunc)


@functools.lru_cache(maxsize=None)
def _residual_prefactor(k: int, trunc: int) -> qseries.Series:
    """``Pbar(q) (q^k; q^k)_inf``."""
    return qseries.overpartition_series(trunc) * qseries.euler_product(trunc, k)


@functools.lru_cache(maxsize=None)
def _residual_crank_series(k: int, trunc: int) -> ZLaurentSeries:
    base = _crank_series(trunc // k)
    dilated: list[Row] = _empty_rows(trunc)
    for t in range(trunc // k + 1):
        _add_row(dilated[k * t], k * t, list(base.rows[t]), t)
    return _freeze(trunc, _series_times_rows(_residual_prefactor(k, trunc), dilated, trunc))


@pydantic.validate_call
def residual_crank_series(k: field_types.PositiveIntT, trunc: field_types.NaturalIntT) -> ZLaurentSeries:
    """``Cbar[k](z; q) = Pbar(q) (q^k; q^k)_inf C(z; q^k)`` through ``q^trunc``.

    Setting ``z = 1`` recovers ``Pbar(q)`` for every ``k``.

    See Also:
        :func:`first_residual_crank_product`, :func:`second_residual_crank_product`
        for the ``k = 1`` and ``k = 2`` products expanded independently.
    """
    return _residual_crank_series(k, trunc)


@pydantic.validate_call
def crank_table_from_series(
    k: field_types.PositiveIntT,
    N: field_types.NaturalIntT,  # noqa: N803
) -> combinatorics.CrankTable:
    """Read ``M[k](m, n)`` for ``n <= N`` off :func:`residual_crank_series`."""
    return _residual_crank_series(k, N).to_crank_table(k)


@pydantic.validate_call
def crank_table_ordinary(N: field_types.NaturalIntT) -> combinatorics.CrankTable:  # noqa: N803
    """Ordinary crank counts ``M(m, n)`` for ``n <= N`` from :func:`crank_series`."""
    return _crank_series(N).to_crank_table(1, objects="partitions")


# ----------------------------------------------------------------------
# Moments
# ----------------------------------------------------------------------


@pydantic.validate_call
def moment_series(
    k: field_types.PositiveIntT,
    ell: field_types.NaturalIntT,
    trunc: field_types.NaturalIntT,
) -> MomentSeries:
    """The moment generating series ``Cbar[k]_ell(q)``.

    ``(z d/dz)^ell`` is applied to the rows of ``C(z; q)``; since
    ``Pbar(q) (q^k; q^k)_inf`` does not involve ``z``, the result is that
    prefactor times the ordinary moment series at ``q^k``.

    Parameters
    ----------
    k : int
        Residual modulus.
    ell : int
        Moment order; odd orders give the zero series.
    trunc : int
        Truncation order.
    """
    if ell % 2:
        return MomentSeries(k, ell, qseries.Series.zero(trunc))
    ordinary = _crank_series(trunc // k).moment(ell)
    padded = qseries.Series.from_coeffs(ordinary.coeffs, trunc)
    series = _residual_prefactor(k, trunc) * qseries.substitute_power(padded, k)
    return MomentSeries(k, ell, series)


@pydantic.validate_call
def positive_moment(
    k: field_types.PositiveIntT,
    ell: field_types.NaturalIntT,
    trunc: field_types.NaturalIntT,
) -> MomentSeries:
    """``sum_n (sum_{m >= 1} m^ell M[k](m, n)) q^n``."""
    ordinary = _crank_series(trunc // k).positive_moment(ell)
    padded = qseries.Series.from_coeffs(ordinary.coeffs, trunc)
    series = _residual_prefactor(k, trunc) * qseries.substitute_power(padded, k)
    return MomentSeries(k, ell, series, positive=True)


@pydantic.validate_call
def moment_from_cumulants(ell: field_types.NaturalIntT, trunc: field_types.NaturalIntT) -> qseries.Series:
    """Ordinary crank moment series ``C_ell(q)`` from its cumulant expansion.

    With ``z = e^x`` the crank product factors as
    ``P(q) * exp(sum_{r even >= 2} 2 Phi_{r-1}(q) x^r / r!)``, so
    ``C_ell = ell! * P(q) * [x^ell] exp(...)``. The ``x``-exponential is
    expanded by ``e_n = (1/n) sum_j j K_j e_{n-j}``.

    >>> from crankforge.cranks import moment_from_cumulants
    >>> [int(c) for c in moment_from_cumulants(2, 4).coeffs]
    [0, 2, 8, 18, 40]
    """
    if ell % 2:
        return qseries.Series.zero(trunc)
    cumulants = [qseries.Series.zero(trunc)] * (ell + 1)
    for r in range(2, ell + 1, 2):
        cumulants[r] = qseries.phi(r - 1, 1, trunc) * fractions.Fraction(2, math.factorial(r))
    exponential = [qseries.Series.one(trunc)]
    for n in range(1, ell + 1):
        total = qseries.Series.zero(trunc)
        for j in range(2, n + 1, 2):
            total = total + cumulants[j] * exponential[n - j] * j
        exponential.append(total * fractions.Fraction(1, n))
    return qseries.partition_series(trunc) * exponential[ell] * math.factorial(ell)


@pydantic.validate_call
def crank_equidistribution(n: field_types.NaturalIntT, modulus: field_types.PositiveIntT = 11) -> list[int]:
    """Ordinary crank counts of weight ``n`` summed over residue classes of ``m``."""
    return _crank_series(n).to_crank_table(1, objects="partitions").residue_class_counts(n, modulus)


def _scan(label: str, lhs: list[int], rhs: list[int], trunc: int) -> types.reports.InequalityReport:
    violations = [n for n, (a, b) in enumerate(zip(lhs, rhs, strict=True)) if a > b]
    equality = [n for n, (a, b) in enumerate(zip(lhs, rhs, strict=True)) if a == b]
    if violations:
        logger.warning(f"{label}: violated at n={violations[:10]}")
    return types.reports.InequalityReport(
        label=label,
        trunc_order=trunc,
        holds=not violations,
        violations=violations,
        equality_set=equality,
        lhs=lhs,
        rhs=rhs,
    )


@pydantic.validate_call
def inequality_scan(
    d: field_types.PositiveIntT,
    k: field_types.PositiveIntT,
    ell: field_types.NaturalIntT,
    N: field_types.NaturalIntT,  # noqa: N803
    positive: bool = False,
) -> types.reports.InequalityReport:
    """Compare ``d * M[dk]_ell(n)`` with ``M[k]_ell(n)`` for ``n <= N``.

    The report lists where the inequality fails and where equality holds;
    it makes no claim about which equality set is expected.

    >>> from crankforge.cranks import inequality_scan
    >>> report = inequality_scan(2, 1, 2, 6)
    >>> report.holds, report.equality_set
    (True, [0])
    """
    build = positive_moment if positive else moment_series
    dilated, base = build(d * k, ell, N), build(k, ell, N)
    lhs = [d * dilated.coefficient(n) for n in range(N + 1)]
    rhs = [base.coefficient(n) for n in range(N + 1)]
    sign = "+" if positive else ""
    return _scan(f"{d}*M[{d * k}]_{ell}{sign} <= M[{k}]_{ell}{sign}", lhs, rhs, N)


@pydantic.validate_call
def monotonicity_scan(
    k: field_types.PositiveIntT,
    ell: field_types.NaturalIntT,
    N: field_types.NaturalIntT,  # noqa: N803
) -> types.reports.InequalityReport:
    """Compare the positive moments ``M[k+1]_ell+(n)`` and ``M[k]_ell+(n)`` for ``n <= N``."""
    upper, lower = positive_moment(k + 1, ell, N), positive_moment(k, ell, N)
    lhs = [upper.coefficient(n) for n in range(N + 1)]
    rhs = [lower.coefficient(n) for n in range(N + 1)]
    return _scan(f"M[{k + 1}]_{ell}+ <= M[{k}]_{ell}+", lhs, rhs, N)

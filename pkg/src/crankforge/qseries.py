"""Truncated formal power series in ``q`` with exact rational coefficients.

A :class:`Series` is known through the coefficient of ``q^N`` inclusive and
carries ``N`` as ``trunc_order``. Arithmetic between series of different
orders truncates to the shorter one and never extends precision.

Example:
    Partition numbers from the reciprocal of Euler's product::

        >>> from crankforge import qseries
        >>> euler = qseries.euler_product(5)
        >>> [int(c) for c in qseries.series_inverse(euler).coeffs]
        [1, 1, 2, 3, 5, 7]

See Also:
    :mod:`crankforge.cranks` for two-variable series in ``z`` and ``q``.
"""

import dataclasses
import fractions
import functools
import logging
import math
import typing

import pydantic

from . import exc, types
from .types import field_types

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_TRUNC_ORDER",
    "Series",
    "PochhammerFactor",
    "PochhammerSpec",
    "series_mul",
    "series_inverse",
    "pochhammer",
    "substitute_power",
    "delta_q",
    "phi",
    "euler_product",
    "partition_series",
    "overpartition_series",
]

#: Default truncation order of every identity suite.
DEFAULT_TRUNC_ORDER = 200

Fraction = fractions.Fraction
ScalarT = typing.Union[int, fractions.Fraction]


def _as_fraction(value: ScalarT) -> fractions.Fraction:
    return value if type(value) is Fraction else Fraction(value)


@dataclasses.dataclass(frozen=True, eq=False, slots=True)
class Series:
    """A power series known through ``q^trunc_order``.

    Attributes
    ----------
    trunc_order : int
        ``N``; the series is known through the coefficient of ``q^N``.
    coeffs : tuple of Fraction
        Exactly ``N + 1`` coefficients, index ``n`` holding ``[q^n]``.

    Equality compares coefficients up to the smaller of the two truncation
    orders, so ``Series`` values are deliberately unhashable.
    """

    trunc_order: int
    coeffs: tuple[fractions.Fraction, ...]

    def __post_init__(self) -> None:
        if self.trunc_order < 0:
            raise ValueError(f"trunc_order must be >= 0, got {self.trunc_order}")
        coeffs = tuple(_as_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.trunc_order + 1:
            raise ValueError(f"expected {self.trunc_order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: typing.Iterable[ScalarT], trunc_order: int) -> "Series":
        """Build a series from leading coefficients, padding with zeros or cutting at ``trunc_order``."""
        values = list(coeffs)[: trunc_order + 1]
        values.extend([0] * (trunc_order + 1 - len(values)))
        return cls(trunc_order, tuple(values))

    @classmethod
    def constant(cls, value: ScalarT, trunc_order: int) -> "Series":
        return cls.from_coeffs([value], trunc_order)

    @classmethod
    def zero(cls, trunc_order: int) -> "Series":
        return cls.from_coeffs([], trunc_order)

    @classmethod
    def one(cls, trunc_order: int) -> "Series":
        return cls.constant(1, trunc_order)

    @classmethod
    def monomial(cls, power: int, trunc_order: int, value: ScalarT = 1) -> "Series":
        """``value * q^power``; zero when ``power`` exceeds the truncation order."""
        coeffs = [0] * (trunc_order + 1)
        if power <= trunc_order:
            coeffs[power] = value
        return cls(trunc_order, tuple(coeffs))

    @classmethod
    def from_payload(cls, payload: types.payloads.SeriesPayload) -> "Series":
        return cls(payload.trunc_order, tuple(payload.coeffs))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    def coefficient(self, n: int) -> fractions.Fraction:
        """``[q^n]``; raises ``IndexError`` beyond the truncation order."""
        if n < 0:
            return Fraction(0)
        if n > self.trunc_order:
            raise IndexError(f"q^{n} is beyond the truncation order {self.trunc_order}")
        return self.coeffs[n]

    def truncate(self, trunc_order: int) -> "Series":
        if trunc_order > self.trunc_order:
            raise ValueError(f"cannot extend a series known through q^{self.trunc_order} to q^{trunc_order}")
        return Series(trunc_order, self.coeffs[: trunc_order + 1])

    def valuation(self) -> typing.Optional[int]:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        return next((n for n, c in enumerate(self.coeffs) if c), None)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_difference(self, other: "Series") -> typing.Optional[int]:
        """Smallest ``n`` at which the two series differ, up to the common order."""
        return next(
            (n for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs, strict=False)) if a != b),
            None,
        )

    def to_payload(self) -> types.payloads.SeriesPayload:
        return types.payloads.SeriesPayload(trunc_order=self.trunc_order, coeffs=list(self.coeffs))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: typing.Union["Series", ScalarT]) -> "Series":
        if isinstance(other, Series):
            order = min(self.trunc_order, other.trunc_order)
            return Series(order, tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs, strict=False)))
        if isinstance(other, (int, Fraction)):
            return Series(self.trunc_order, (self.coeffs[0] + other, *self.coeffs[1:]))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.trunc_order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: typing.Union["Series", ScalarT]) -> "Series":
        if isinstance(other, (Series, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: ScalarT) -> "Series":
        return (-self) + other

    def __mul__(self, other: typing.Union["Series", ScalarT]) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return Series(self.trunc_order, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Series":
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"only non-negative integer powers are supported, got {power!r}")
        result = Series.one(self.trunc_order)
        base = self
        while power:
            if power & 1:
                result = series_mul(result, base)
            power >>= 1
            if power:
                base = series_mul(base, base)
        return result

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.trunc_order >= 6 else ""
        return f"Series(trunc_order={self.trunc_order}, coeffs=[{shown}{more}])"


@dataclasses.dataclass(frozen=True)
class PochhammerFactor:
    """One factor ``(a; q^d)_inf`` with ``a = sign * q^shift``.

    ``sign = 1`` gives factors ``1 - q^(shift + d*i)``; ``sign = -1`` gives
    ``1 + q^(shift + d*i)``.
    """

    shift: int
    sign: field_types.SignT = 1

    def __post_init__(self) -> None:
        if self.shift < 0:
            raise ValueError(f"shift must be >= 0, got {self.shift}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be 1 or -1, got {self.sign}")


@dataclasses.dataclass(frozen=True)
class PochhammerSpec:
    """A product of q-Pochhammer symbols sharing the modulus ``q^modulus``.

    Example:
        ``(q; q^2)_inf`` is ``PochhammerSpec((PochhammerFactor(1),), modulus=2)``
        and ``(-q, q; q)_inf`` is
        ``PochhammerSpec((PochhammerFactor(1, -1), PochhammerFactor(1)), modulus=1)``.
    """

    factors: tuple[PochhammerFactor, ...] = ()
    modulus: int = 1

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")


# ----------------------------------------------------------------------
# Integer kernels
# ----------------------------------------------------------------------


def _integer_form(coeffs: typing.Sequence[fractions.Fraction]) -> tuple[list[int], int]:
    """Scale to integers: returns ``(numerators, denominator)`` with ``coeffs = numerators / denominator``."""
    denominator = math.lcm(*(c.denominator for c in coeffs))
    if denominator == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (denominator // c.denominator) for c in coeffs], denominator


def _convolve(left: typing.Sequence[int], right: typing.Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    right_terms = [(j, value) for j, value in enumerate(right[: order + 1]) if value]
    for i, a in enumerate(left[: order + 1]):
        if not a:
            continue
        limit = order - i
        for j, b in right_terms:
            if j > limit:
                break
            out[i + j] += a * b
    return out


def _from_integers(numerators: typing.Sequence[int], denominator: int) -> tuple[fractions.Fraction, ...]:
    if denominator == 1:
        return tuple(Fraction(c) for c in numerators)
    return tuple(Fraction(c, denominator) for c in numerators)


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at ``min(a.trunc_order, b.trunc_order)``.

    Both operands are scaled to a common integer form first, so the
    convolution itself runs on Python integers; the result is identical to
    the rational convolution.

    Example:
        >>> from crankforge.qseries import Series, series_mul
        >>> series_mul(Series.from_coeffs([1, 1], 2), Series.from_coeffs([1, -1], 2)).coeffs
        (Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1))
    """
    order = min(a.trunc_order, b.trunc_order)
    left, left_den = _integer_form(a.coeffs[: order + 1])
    right, right_den = _integer_form(b.coeffs[: order + 1])
    return Series(order, _from_integers(_convolve(left, right, order), left_den * right_den))


def series_inverse(a: Series) -> Series:
    """Multiplicative inverse through the truncation order.

    Raises
    ------
    ZeroConstantTermError
        If the constant term of ``a`` is zero.
    """
    if a.coeffs[0] == 0:
        raise exc.ZeroConstantTermError("Cannot invert a series with zero constant term.")
    order = a.trunc_order
    numerators, denominator = _integer_form(a.coeffs)
    terms = [(j, value) for j, value in enumerate(numerators) if j and value]
    lead = numerators[0]
    if lead in (1, -1):
        # 1/lead == lead, so the recurrence stays in the integers.
        inverse = [lead] + [0] * order
        for n in range(1, order + 1):
            total = 0
            for j, value in terms:
                if j > n:
                    break
                total += value * inverse[n - j]
            inverse[n] = -lead * total
        return Series(order, tuple(Fraction(c * denominator) for c in inverse))
    inverse_q = [Fraction(1, lead)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        total = Fraction(0)
        for j, value in terms:
            if j > n:
                break
            total += value * inverse_q[n - j]
        inverse_q[n] = -total / lead
    return Series(order, tuple(c * denominator for c in inverse_q))


def pochhammer(spec: PochhammerSpec, trunc: int) -> Series:
    """Expand the product described by ``spec`` through ``q^trunc``.

    Only the factors ``1 -+ q^e`` with ``e <= trunc`` contribute; the
    remaining factors are ``1`` modulo ``q^(trunc+1)``.

    Raises
    ------
    NonUnitProductError
        If a factor has ``a = +1`` (``shift = 0`` and ``sign = 1``).

    Example:
        >>> from crankforge.qseries import PochhammerFactor, PochhammerSpec, pochhammer
        >>> distinct = pochhammer(PochhammerSpec((PochhammerFactor(1, -1),)), 3)
        >>> [int(c) for c in distinct.coeffs]
        [1, 1, 1, 2]
    """
    if trunc < 0:
        raise ValueError(f"trunc must be >= 0, got {trunc}")
    coeffs = [1] + [0] * trunc
    for factor in spec.factors:
        if factor.shift == 0 and factor.sign == 1:
            raise exc.NonUnitProductError(f"Factor (1; q^{spec.modulus})_inf has a vanishing first term.")
        exponent = factor.shift
        while exponent <= trunc:
            if exponent == 0:
                coeffs = [2 * c for c in coeffs]
            else:
                for n in range(trunc, exponent - 1, -1):
                    coeffs[n] -= factor.sign * coeffs[n - exponent]
            exponent += spec.modulus
    return Series(trunc, tuple(coeffs))


def substitute_power(a: Series, d: int) -> Series:
    """Replace ``q`` by ``q^d``, keeping the truncation order of ``a``."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d == 1:
        return a
    coeffs = [Fraction(0)] * (a.trunc_order + 1)
    for n in range(a.trunc_order // d + 1):
        coeffs[d * n] = a.coeffs[n]
    return Series(a.trunc_order, tuple(coeffs))


def delta_q(a: Series) -> Series:
    """The operator ``q d/dq``: ``[q^n]`` is multiplied by ``n``."""
    return Series(a.trunc_order, tuple(n * c for n, c in enumerate(a.coeffs)))


@functools.lru_cache(maxsize=None)
def _divisor_power_sums(power: int, limit: int) -> tuple[int, ...]:
    sums = [0] * (limit + 1)
    for divisor in range(1, limit + 1):
        term = divisor**power
        for multiple in range(divisor, limit + 1, divisor):
            sums[multiple] += term
    return tuple(sums)


@functools.lru_cache(maxsize=None)
def _phi_cached(l: int, d: int, trunc: int) -> Series:  # noqa: E741
    sums = _divisor_power_sums(l, trunc // d)
    coeffs = [0] * (trunc + 1)
    for n in range(1, trunc // d + 1):
        coeffs[d * n] = sums[n]
    return Series(trunc, tuple(coeffs))


@pydantic.validate_call
def phi(
    l: field_types.OddPositiveIntT,  # noqa: E741
    d: field_types.PositiveIntT,
    trunc: field_types.NaturalIntT,
) -> Series:
    """Divisor-power series ``Phi_l(q^d) = sum sigma_l(n) q^(d n)``.

    Parameters
    ----------
    l : int
        Odd power ``l >= 1`` in ``sigma_l(n) = sum_{e | n} e^l``.
    d : int
        Argument ``q^d``.
    trunc : int
        Truncation order.

    Example:
        >>> from crankforge.qseries import phi
        >>> [int(c) for c in phi(1, 1, 4).coeffs]
        [0, 1, 3, 4, 7]
    """
    return _phi_cached(l, d, trunc)


@functools.lru_cache(maxsize=None)
def euler_product(trunc: int, d: int = 1) -> Series:
    """``(q^d; q^d)_inf`` through ``q^trunc``."""
    return pochhammer(PochhammerSpec((PochhammerFactor(d),), modulus=d), trunc)


@functools.lru_cache(maxsize=None)
def partition_series(trunc: int) -> Series:
    """``P(q) = 1 / (q; q)_inf``, the partition generating function."""
    return series_inverse(euler_product(trunc))


@functools.lru_cache(maxsize=None)
def overpartition_series(trunc: int) -> Series:
    """``Pbar(q) = (-q; q)_inf / (q; q)_inf``, the overpartition generating function."""
    distinct = pochhammer(PochhammerSpec((PochhammerFactor(1, -1),)), trunc)
    logger.debug(f"Expanded overpartition generating function through q^{trunc}")
    return series_mul(distinct, partition_series(trunc))

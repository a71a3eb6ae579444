"""Brute-force partition and overpartition statistics.

Everything in this module is computed by explicit enumeration; it is the
oracle the product formulas of :mod:`crankforge.cranks` are checked against.

Enumeration order is fixed:

* partitions come in descending lexicographic order of their parts,
  ``(3), (2, 1), (1, 1, 1)``;
* overpartitions follow their underlying partition, and within one partition
  every distinct part value is overlined first, then left plain, the largest
  value varying slowest.

Example:
    >>> from crankforge import combinatorics
    >>> [str(o) for o in combinatorics.enumerate_overpartitions(2)]
    ['2o', '2', '1o 1', '1 1']
    >>> combinatorics.crank(combinatorics.Partition((2, 1, 1)))
    -2
"""

import collections
import csv
import dataclasses
import functools
import itertools
import logging
import typing

import pydantic

from . import exc, types
from .types import field_types

logger = logging.getLogger(__name__)

__all__ = [
    "ENUMERATION_LIMIT",
    "CrankConvention",
    "Partition",
    "Overpartition",
    "CrankTable",
    "enumerate_partitions",
    "enumerate_overpartitions",
    "partition_count",
    "overpartition_count",
    "crank",
    "residual_partition",
    "residual_crank",
    "crank_table_bruteforce",
    "ordinary_crank_table_bruteforce",
    "nov",
    "ov",
    "omega_k",
    "weighted_crank_sum",
    "euler_dilation",
]

#: Largest weight any brute-force operation will enumerate.
ENUMERATION_LIMIT = 40

#: ``"generating"`` replaces the single count of a residual partition ``(1)``
#: by the vector ``{-1: +1, 0: -1, +1: +1}``; ``"raw"`` uses the plain statistic.
CrankConvention = typing.Literal["generating", "raw"]

# Contribution of a residual partition equal to (1) under the generating-function convention.
_UNIT_CORRECTION: typing.Final = ((-1, 1), (0, -1), (1, 1))


@dataclasses.dataclass(frozen=True, slots=True)
class Partition:
    """A partition as a non-increasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in itertools.pairwise(parts)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: typing.Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.parts) or "()"


@dataclasses.dataclass(frozen=True, slots=True)
class Overpartition:
    """An overpartition as ``(part, overlined)`` entries.

    Entries are non-increasing by part; for an overlined value the overlined
    entry precedes the plain copies, and each value is overlined at most once.
    """

    entries: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self) -> None:
        entries = tuple((int(p), bool(o)) for p, o in self.entries)
        seen_overlined = set()
        for index, (part, overlined) in enumerate(entries):
            if part < 1:
                raise ValueError(f"parts must be positive: {entries}")
            if index and entries[index - 1][0] < part:
                raise ValueError(f"parts must be non-increasing: {entries}")
            if overlined:
                if part in seen_overlined:
                    raise ValueError(f"part {part} is overlined twice")
                if index and entries[index - 1][0] == part:
                    raise ValueError(f"overlined {part} must come before its plain copies")
                seen_overlined.add(part)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_tokens(cls, tokens: typing.Iterable[str]) -> "Overpartition":
        """Parse tokens such as ``["4", "2o", "1"]``."""
        entries = []
        for token in tokens:
            overlined = token.endswith("o")
            entries.append((int(token[:-1] if overlined else token), overlined))
        entries.sort(key=lambda entry: (-entry[0], not entry[1]))
        return cls(tuple(entries))

    @property
    def weight(self) -> int:
        return sum(part for part, _ in self.entries)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(part for part, _ in self.entries)

    def tokens(self) -> list[str]:
        return [f"{part}o" if overlined else str(part) for part, overlined in self.entries]

    def __str__(self) -> str:
        return " ".join(self.tokens()) or "()"


# ----------------------------------------------------------------------
# Enumeration and counting
# ----------------------------------------------------------------------


def _check_limit(n: int) -> None:
    if n > ENUMERATION_LIMIT:
        raise exc.EnumerationBudgetExceededError(n, ENUMERATION_LIMIT)


def _descending_parts(n: int, largest: int) -> typing.Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending_parts(n - first, first):
            yield (first, *rest)


@functools.lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(parts) for parts in _descending_parts(n, n))


def _overline_choices(parts: tuple[int, ...]) -> typing.Iterator[Overpartition]:
    runs = [(value, len(list(group))) for value, group in itertools.groupby(parts)]
    for flags in itertools.product((True, False), repeat=len(runs)):
        entries: list[tuple[int, bool]] = []
        for (value, multiplicity), overlined in zip(runs, flags, strict=True):
            if overlined:
                entries.append((value, True))
                entries.extend([(value, False)] * (multiplicity - 1))
            else:
                entries.extend([(value, False)] * multiplicity)
        yield Overpartition(tuple(entries))


@functools.lru_cache(maxsize=None)
def _overpartitions(n: int) -> tuple[Overpartition, ...]:
    out = tuple(over for partition in _partitions(n) for over in _overline_choices(partition.parts))
    logger.debug(f"Enumerated {len(out)} overpartitions of {n}")
    return out


@pydantic.validate_call
def enumerate_partitions(n: field_types.NaturalIntT) -> tuple[Partition, ...]:
    """All partitions of ``n`` in descending lexicographic order.

    Raises
    ------
    EnumerationBudgetExceededError
        If ``n`` exceeds :data:`ENUMERATION_LIMIT`.
    """
    _check_limit(n)
    return _partitions(n)


@pydantic.validate_call
def enumerate_overpartitions(n: field_types.NaturalIntT) -> tuple[Overpartition, ...]:
    """All overpartitions of ``n``, each exactly once.

    Example:
        >>> from crankforge.combinatorics import enumerate_overpartitions
        >>> len(enumerate_overpartitions(3))
        8
        >>> str(enumerate_overpartitions(0)[0])
        '()'

    Raises
    ------
    EnumerationBudgetExceededError
        If ``n`` exceeds :data:`ENUMERATION_LIMIT`.
    """
    _check_limit(n)
    return _overpartitions(n)


@functools.lru_cache(maxsize=None)
def _partition_counts(limit: int) -> tuple[int, ...]:
    counts = [1] + [0] * limit
    for part in range(1, limit + 1):
        for n in range(part, limit + 1):
            counts[n] += counts[n - part]
    return tuple(counts)


@functools.lru_cache(maxsize=None)
def _distinct_counts(limit: int) -> tuple[int, ...]:
    counts = [1] + [0] * limit
    for part in range(1, limit + 1):
        for n in range(limit, part - 1, -1):
            counts[n] += counts[n - part]
    return tuple(counts)


@pydantic.validate_call
def partition_count(n: field_types.NaturalIntT) -> int:
    """``p(n)`` by the coin-change recurrence over part sizes.

    >>> from crankforge.combinatorics import partition_count
    >>> [partition_count(n) for n in range(8)]
    [1, 1, 2, 3, 5, 7, 11, 15]
    """
    return _partition_counts(n)[n]


@pydantic.validate_call
def overpartition_count(n: field_types.NaturalIntT) -> int:
    """``pbar(n)``: the overlined parts form a distinct-part partition of some ``j <= n``.

    >>> from crankforge.combinatorics import overpartition_count
    >>> [overpartition_count(n) for n in range(6)]
    [1, 2, 4, 8, 14, 24]
    """
    distinct = _distinct_counts(n)
    ordinary = _partition_counts(n)
    return sum(distinct[j] * ordinary[n - j] for j in range(n + 1))


# ----------------------------------------------------------------------
# Crank statistics
# ----------------------------------------------------------------------


def _crank_of_parts(parts: tuple[int, ...]) -> int:
    if not parts:
        return 0
    ones = parts.count(1)
    if ones == 0:
        return parts[0]
    return sum(1 for p in parts if p > ones) - ones


def _residual_parts(over: Overpartition, k: int) -> tuple[int, ...]:
    return tuple(part // k for part, overlined in over.entries if not overlined and part % k == 0)


def crank(p: Partition) -> int:
    """Andrews-Garvan crank of an ordinary partition.

    The largest part when there are no ones; otherwise the number of parts
    exceeding the number of ones, minus the number of ones. The empty
    partition has crank ``0`` by convention and is logged at debug level;
    ``(1)`` has the raw crank ``-1``.

    >>> from crankforge.combinatorics import Partition, crank
    >>> crank(Partition((4,))), crank(Partition((1,))), crank(Partition(()))
    (4, -1, 0)
    """
    if p.is_empty:
        logger.debug("Crank of the empty partition taken as 0")
    return _crank_of_parts(p.parts)


@pydantic.validate_call
def residual_partition(o: pydantic.SkipValidation[Overpartition], k: field_types.PositiveIntT) -> Partition:
    """Non-overlined parts of ``o`` divisible by ``k``, each divided by ``k``.

    >>> from crankforge.combinatorics import Overpartition, residual_partition
    >>> o = Overpartition.from_tokens(["4", "2o", "1"])
    >>> str(residual_partition(o, 1)), str(residual_partition(o, 2))
    ('4 1', '2')
    """
    return Partition(_residual_parts(o, k))


@pydantic.validate_call
def residual_crank(o: pydantic.SkipValidation[Overpartition], k: field_types.PositiveIntT) -> int:
    """The k-th residual crank: the crank of :func:`residual_partition`."""
    parts = _residual_parts(o, k)
    if not parts:
        logger.debug(f"Empty residual partition of {o} at k={k}; crank taken as 0")
    return _crank_of_parts(parts)


@pydantic.validate_call
def omega_k(o: pydantic.SkipValidation[Overpartition], k: field_types.PositiveIntT) -> int:
    """Number of times ``k`` occurs as a non-overlined part of ``o``."""
    return sum(1 for part, overlined in o.entries if part == k and not overlined)


# ----------------------------------------------------------------------
# Crank tables
# ----------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CrankTable:
    """Exact counts ``M[k](m, n)`` for ``0 <= n <= trunc_order``.

    Attributes
    ----------
    k : int
        Residual modulus (``1`` for ordinary partition tables).
    trunc_order : int
        Largest weight ``n`` tabulated.
    counts : dict
        ``(m, n) -> count``; zero counts are never stored.
    convention : {"generating", "raw"}
        How a residual partition ``(1)`` was counted.
    objects : {"overpartitions", "partitions"}
        What was counted.
    """

    k: int
    trunc_order: int
    counts: dict[tuple[int, int], int]
    convention: CrankConvention = "generating"
    objects: typing.Literal["overpartitions", "partitions"] = "overpartitions"

    @classmethod
    def from_columns(
        cls,
        k: int,
        columns: typing.Sequence[typing.Mapping[int, int]],
        convention: CrankConvention = "generating",
        objects: typing.Literal["overpartitions", "partitions"] = "overpartitions",
    ) -> "CrankTable":
        """Build from one ``{m: count}`` mapping per weight ``n = 0, 1, ...``."""
        counts = {(m, n): value for n, column in enumerate(columns) for m, value in column.items() if value}
        return cls(k=k, trunc_order=len(columns) - 1, counts=counts, convention=convention, objects=objects)

    def count(self, m: int, n: int) -> int:
        if not 0 <= n <= self.trunc_order:
            raise IndexError(f"n={n} outside 0..{self.trunc_order}")
        return self.counts.get((m, n), 0)

    def column(self, n: int) -> dict[int, int]:
        """Nonzero counts of weight ``n`` keyed by ``m`` in ascending order."""
        if not 0 <= n <= self.trunc_order:
            raise IndexError(f"n={n} outside 0..{self.trunc_order}")
        return dict(sorted((m, value) for (m, weight), value in self.counts.items() if weight == n))

    def column_sum(self, n: int) -> int:
        return sum(self.column(n).values())

    def moment(self, ell: int, n: int) -> int:
        """``sum_m m^ell M(m, n)``."""
        return sum(m**ell * value for m, value in self.column(n).items())

    def positive_moment(self, ell: int, n: int) -> int:
        """``sum_{m >= 1} m^ell M(m, n)``."""
        return sum(m**ell * value for m, value in self.column(n).items() if m >= 1)

    def residue_class_counts(self, n: int, modulus: int) -> list[int]:
        """``[sum_{m = r mod modulus} M(m, n) for r in range(modulus)]``."""
        sums = [0] * modulus
        for m, value in self.column(n).items():
            sums[m % modulus] += value
        return sums

    def is_symmetric(self) -> bool:
        return all(self.counts.get((-m, n), 0) == value for (m, n), value in self.counts.items())

    def diff(self, other: "CrankTable") -> list[tuple[int, int, int, int]]:
        """Entries ``(n, m, self_count, other_count)`` that differ, over the common weights."""
        limit = min(self.trunc_order, other.trunc_order)
        keys = {key for key in (*self.counts, *other.counts) if key[1] <= limit}
        return [
            (n, m, self.counts.get((m, n), 0), other.counts.get((m, n), 0))
            for m, n in sorted(keys, key=lambda key: (key[1], key[0]))
            if self.counts.get((m, n), 0) != other.counts.get((m, n), 0)
        ]

    def rows(self) -> list[types.payloads.CrankTableRow]:
        """Nonzero entries ordered by ``n`` then ``m``."""
        return [
            types.payloads.CrankTableRow(k=self.k, n=n, m=m, count=value)
            for (m, n), value in sorted(self.counts.items(), key=lambda item: (item[0][1], item[0][0]))
        ]

    def to_payload(self) -> types.payloads.CrankTablePayload:
        return types.payloads.CrankTablePayload(
            k=self.k,
            trunc_order=self.trunc_order,
            convention=self.convention,
            objects=self.objects,
            rows=self.rows(),
        )

    def write_csv(self, stream: typing.TextIO) -> None:
        """Write ``k,n,m,count`` rows with a header line."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("k", "n", "m", "count"))
        for row in self.rows():
            writer.writerow((row.k, row.n, row.m, row.count))


def _add_crank(column: collections.Counter, residual: tuple[int, ...], convention: CrankConvention) -> None:
    if convention == "generating" and residual == (1,):
        for m, value in _UNIT_CORRECTION:
            column[m] += value
    else:
        column[_crank_of_parts(residual)] += 1


@pydantic.validate_call
def crank_table_bruteforce(
    k: field_types.PositiveIntT,
    N: field_types.NaturalIntT,  # noqa: N803
    convention: CrankConvention = "generating",
) -> CrankTable:
    """Tabulate k-th residual cranks of every overpartition of weight ``<= N``.

    Parameters
    ----------
    k : int
        Residual modulus.
    N : int
        Largest weight; at most :data:`ENUMERATION_LIMIT`.
    convention : {"generating", "raw"}
        ``"generating"`` (default) matches the coefficients of the product
        formula; ``"raw"`` counts the combinatorial statistic as defined.

    Example:
        >>> from crankforge.combinatorics import crank_table_bruteforce
        >>> crank_table_bruteforce(1, 1).column(1)
        {-1: 1, 1: 1}

    Raises
    ------
    EnumerationBudgetExceededError
        If ``N`` exceeds :data:`ENUMERATION_LIMIT`.
    """
    _check_limit(N)
    columns = []
    for n in range(N + 1):
        column: collections.Counter = collections.Counter()
        for over in _overpartitions(n):
            _add_crank(column, _residual_parts(over, k), convention)
        columns.append(column)
    logger.debug(f"Brute-force crank table k={k} through n={N} ({convention} convention)")
    return CrankTable.from_columns(k, columns, convention=convention)


@pydantic.validate_call
def ordinary_crank_table_bruteforce(
    N: field_types.NaturalIntT,  # noqa: N803
    convention: CrankConvention = "generating",
) -> CrankTable:
    """Tabulate Andrews-Garvan cranks of ordinary partitions of weight ``<= N``."""
    _check_limit(N)
    columns = []
    for n in range(N + 1):
        column: collections.Counter = collections.Counter()
        for partition in _partitions(n):
            _add_crank(column, partition.parts, convention)
        columns.append(column)
    return CrankTable.from_columns(1, columns, convention=convention, objects="partitions")


# ----------------------------------------------------------------------
# Weighted sums
# ----------------------------------------------------------------------


@pydantic.validate_call
def nov(k: field_types.PositiveIntT, n: field_types.NaturalIntT) -> int:
    """Sum of non-overlined parts divisible by ``k`` over all overpartitions of ``n``.

    >>> from crankforge.combinatorics import nov
    >>> nov(1, 3), nov(2, 3)
    (14, 4)
    """
    _check_limit(n)
    return sum(
        part for over in _overpartitions(n) for part, overlined in over.entries if not overlined and not part % k
    )


@pydantic.validate_call
def ov(k: field_types.PositiveIntT, n: field_types.NaturalIntT) -> int:
    """Sum of overlined parts divisible by ``k`` over all overpartitions of ``n``.

    >>> from crankforge.combinatorics import ov
    >>> ov(1, 2), ov(2, 3)
    (3, 4)
    """
    _check_limit(n)
    return sum(part for over in _overpartitions(n) for part, overlined in over.entries if overlined and not part % k)


@pydantic.validate_call
def weighted_crank_sum(
    k: field_types.PositiveIntT,
    n: field_types.NaturalIntT,
    convention: CrankConvention = "raw",
) -> int:
    """``sum over overpartitions o of n of omega_k(o) * residual_crank(o, k)``.

    Under the ``"generating"`` convention a residual partition ``(1)``
    contributes its correction vector, whose first moment is zero.
    """
    _check_limit(n)
    total = 0
    for over in _overpartitions(n):
        weight = sum(1 for part, overlined in over.entries if part == k and not overlined)
        if not weight:
            continue
        residual = _residual_parts(over, k)
        if convention == "generating" and residual == (1,):
            total += weight * sum(m * value for m, value in _UNIT_CORRECTION)
        else:
            total += weight * _crank_of_parts(residual)
    return total


# ----------------------------------------------------------------------
# Euler dilation
# ----------------------------------------------------------------------


def _odd_part(value: int) -> tuple[int, int]:
    """Split ``value = 2^a * odd`` into ``(a, odd)``."""
    power = 0
    while not value % 2:
        value //= 2
        power += 1
    return power, value


@pydantic.validate_call
def euler_dilation(
    p: pydantic.SkipValidation[Partition],
    k: field_types.PositiveIntT,
    direction: typing.Literal["forward", "inverse"] = "forward",
) -> Partition:
    """Euler's odd/distinct bijection dilated by ``k``.

    ``forward`` maps distinct parts divisible by ``k`` to parts divisible by
    ``k`` but not ``2k``: a part ``k * 2^a * m`` (``m`` odd) becomes ``2^a``
    copies of ``k * m``. ``inverse`` merges equal parts along the binary
    expansion of their multiplicity.

    Example:
        >>> from crankforge.combinatorics import Partition, euler_dilation
        >>> str(euler_dilation(Partition((4, 2)), 2))
        '2 2 2'
        >>> str(euler_dilation(Partition((2, 2, 2)), 2, "inverse"))
        '4 2'

    Raises
    ------
    PreconditionViolatedError
        With the offending part when ``p`` is outside the domain.
    """
    if direction == "forward":
        if len(set(p.parts)) != len(p.parts):
            repeated = next(part for part, count in collections.Counter(p.parts).items() if count > 1)
            raise exc.PreconditionViolatedError(f"Part {repeated} is repeated.", offending=repeated)
        out: list[int] = []
        for part in p.parts:
            if part % k:
                raise exc.PreconditionViolatedError(f"Part {part} is not divisible by {k}.", offending=part)
            power, odd = _odd_part(part // k)
            out.extend([k * odd] * (2**power))
        return Partition.from_parts(out)

    out = []
    for part, multiplicity in collections.Counter(p.parts).items():
        if part % k or (part // k) % 2 == 0:
            raise exc.PreconditionViolatedError(
                f"Part {part} is not an odd multiple of {k}.",
                offending=part,
            )
        power = 0
        while multiplicity:
            if multiplicity & 1:
                out.append(part * 2**power)
            multiplicity >>= 1
            power += 1
    return Partition.from_parts(out)

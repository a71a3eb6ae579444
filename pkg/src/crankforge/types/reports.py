"""Report models emitted by identity checks, scans and numeric checks.

Every top-level report is a :class:`~crankforge.types.base.VersionedModel`
and therefore carries ``"schema": 1`` when dumped with
:meth:`~crankforge.types.base.BaseModel.to_json`.
"""

import typing

import pydantic

from . import base


class IdentityReport(base.BaseModel):
    """Outcome of one exact identity check.

    Attributes
    ----------
    name : str
        Stable identifier, e.g. ``"nov[k=2]"``. Suite output is ordered by it.
    passed : bool
        True when both sides agree everywhere they were compared.
    checked_through : int
        Largest index (weight ``n`` or power of ``q``) compared.
    first_failure : int, optional
        Smallest index where the sides differ.
    detail : dict
        Check-specific values (anchors, sample coefficients, equality sets).
    """

    name: str
    passed: bool
    checked_through: int
    first_failure: typing.Optional[int] = None
    detail: dict[str, typing.Any] = pydantic.Field(default_factory=dict)


class SuiteReport(base.VersionedModel):
    """The collected items of one ``verify`` invocation."""

    suite: str
    trunc_order: int
    seed: typing.Optional[int] = None
    passed: bool
    items: list[IdentityReport]

    @classmethod
    def from_items(
        cls,
        suite: str,
        items: typing.Iterable[IdentityReport],
        trunc_order: int,
        seed: typing.Optional[int] = None,
    ) -> "SuiteReport":
        ordered = sorted(items, key=lambda item: item.name)
        return cls(
            suite=suite,
            trunc_order=trunc_order,
            seed=seed,
            passed=all(item.passed for item in ordered),
            items=ordered,
        )


class InequalityReport(base.VersionedModel):
    """Coefficient-wise comparison ``lhs(n) <= rhs(n)`` for ``n <= trunc_order``.

    The report records what was observed; it never asserts a particular
    equality set.
    """

    label: str
    trunc_order: int
    holds: bool
    violations: list[int]
    equality_set: list[int]
    lhs: list[int]
    rhs: list[int]


class TransformationReport(base.VersionedModel):
    """Outcome of a floating-point transformation-law check.

    ``defect`` is the absolute difference of both sides divided by
    ``max(1, |lhs|, |rhs|)``.
    """

    check: str
    tau: tuple[float, float]
    gamma: typing.Optional[tuple[int, int, int, int]] = None
    weight: typing.Optional[int] = None
    level: typing.Optional[int] = None
    defect: float
    tolerance: float
    passed: bool = pydantic.Field(alias="pass")


class EvaluationReport(base.VersionedModel):
    """A named series evaluated at one point of the upper half-plane."""

    series: str
    tau: tuple[float, float]
    trunc_order: int
    value: tuple[float, float] = pydantic.Field(description="Real and imaginary part.")

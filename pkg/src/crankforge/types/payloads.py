"""Serialised forms of series and crank tables.

A :class:`SeriesPayload` is the JSON shape of a truncated power series::

    {"schema": 1, "trunc_order": 3, "coeffs": ["1", "-1", "-1", "0"]}

A :class:`CrankTablePayload` carries the same rows the CSV writer emits
(``k, n, m, count``), omitting zero counts.
"""

import typing

import pydantic

from . import base, field_types


class SeriesPayload(base.VersionedModel):
    """JSON form of a :class:`crankforge.qseries.Series`."""

    trunc_order: field_types.NaturalIntT = pydantic.Field(
        description="The series is known through the coefficient of q^trunc_order inclusive."
    )
    coeffs: list[field_types.RationalStr] = pydantic.Field(description="Exact coefficients of q^0 .. q^trunc_order.")

    @pydantic.model_validator(mode="after")
    def _check_length(self) -> "SeriesPayload":
        if len(self.coeffs) != self.trunc_order + 1:
            raise ValueError(f"expected {self.trunc_order + 1} coefficients, got {len(self.coeffs)}")
        return self


class CrankTableRow(base.BaseModel):
    """One nonzero entry ``M[k](m, n) = count``."""

    k: int
    n: int
    m: int
    count: int


class CrankTablePayload(base.VersionedModel):
    """JSON form of a :class:`crankforge.combinatorics.CrankTable`."""

    k: field_types.PositiveIntT
    trunc_order: field_types.NaturalIntT
    convention: typing.Literal["generating", "raw"] = "generating"
    objects: typing.Literal["overpartitions", "partitions"] = "overpartitions"
    rows: list[CrankTableRow]

"""Quasimodular monomials and the certificates built from them.

A :class:`QMonomial` is a product of generators evaluated at ``q^d``:
Eisenstein series ``E2, E4, E6, ...`` and divisor-power series
``Phi1, Phi3, ...``. Its weight counts ``E_w`` as ``w`` and ``Phi_l`` as
``l + 1``.

    >>> from crankforge.types.certificates import QFactor, QMonomial
    >>> m = QMonomial(factors=(QFactor(kind="E", index=2, d=2, exponent=2), QFactor(kind="E", index=4, d=1)))
    >>> m.label, m.weight
    ('E2(q^2)^2*E4(q)', 8)
"""

import fractions
import typing

import pydantic

from . import base, field_types


class QFactor(base.BaseModel):
    """One generator power ``G(q^d)^exponent``."""

    kind: typing.Literal["E", "Phi"]
    index: field_types.PositiveIntT = pydantic.Field(description="Weight 2k for E, odd l for Phi.")
    d: field_types.PositiveIntT = 1
    exponent: field_types.PositiveIntT = 1

    @pydantic.model_validator(mode="after")
    def _check_index(self) -> "QFactor":
        if self.kind == "E" and self.index % 2:
            raise ValueError(f"Eisenstein weight must be even, got {self.index}")
        if self.kind == "Phi" and self.index % 2 == 0:
            raise ValueError(f"Phi index must be odd, got {self.index}")
        return self

    @property
    def weight(self) -> int:
        base_weight = self.index if self.kind == "E" else self.index + 1
        return base_weight * self.exponent

    @property
    def label(self) -> str:
        argument = "q" if self.d == 1 else f"q^{self.d}"
        power = "" if self.exponent == 1 else f"^{self.exponent}"
        return f"{self.kind}{self.index}({argument}){power}"


class QMonomial(base.BaseModel):
    """A product of :class:`QFactor` values; the empty product is ``1``.

    Factors are kept in a canonical order (Phi before E, then by index and
    ``d``) so that equal monomials compare and hash equal.
    """

    factors: tuple[QFactor, ...] = ()

    @pydantic.field_validator("factors", mode="after")
    @classmethod
    def _canonical_order(cls, factors: tuple[QFactor, ...]) -> tuple[QFactor, ...]:
        return tuple(sorted(factors, key=lambda f: (f.kind != "Phi", f.index, f.d)))

    @property
    def weight(self) -> int:
        return sum(factor.weight for factor in self.factors)

    @property
    def label(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(factor.label for factor in self.factors)


class MembershipCertificate(base.VersionedModel):
    """Exact coordinates of a target q-expansion in a declared spanning set.

    The claim is ``sum(coordinates[i] * expand(span[i])) == target`` through
    ``q^residual_order``. When ``no_constant_term`` is set the combination
    also has a vanishing constant term. ``rank`` is the rank of the
    coefficient matrix; below ``len(span)`` the coordinates are one of many
    solutions, with the free columns at zero.
    """

    target: str
    level: int
    max_weight: int
    span: list[QMonomial]
    coordinates: list[field_types.RationalStr]
    residual_order: int
    rank: int = pydantic.Field(ge=0)
    no_constant_term: bool = True

    @pydantic.model_validator(mode="after")
    def _check_lengths(self) -> "MembershipCertificate":
        if len(self.span) != len(self.coordinates):
            raise ValueError("span and coordinates differ in length")
        if self.rank > len(self.span):
            raise ValueError(f"rank {self.rank} exceeds the span size {len(self.span)}")
        return self

    @property
    def dependent(self) -> bool:
        """Whether the span is rank-deficient through ``q^residual_order``."""
        return self.rank < len(self.span)

    def support(self) -> dict[str, fractions.Fraction]:
        """Nonzero coordinates keyed by monomial label."""
        return {mono.label: value for mono, value in zip(self.span, self.coordinates, strict=True) if value}


class Representation(base.VersionedModel):
    """Integer coefficients expressing an even crank moment in Phi monomials.

    ``alphas`` is keyed by the exponent tuple ``"(a1,...,aj)"`` of
    ``Phi1^a1 * Phi3^a2 * ... * Phi_{2j-1}^aj`` evaluated at ``q^k``.
    """

    k: int
    j: int
    trunc_order: int
    alphas: dict[str, int]

"""Custom Pydantic field types for crankforge models.

This module provides the exact-rational field type used by every serialised
coefficient, and the constrained integer aliases used to validate the
arguments of public operations.

See Also:
    - https://docs.pydantic.dev/latest/concepts/types/
    - https://docs.pydantic.dev/latest/api/functional_validators/
"""

import fractions
import typing

import pydantic

__all__ = [
    "RationalStr",
    "NaturalIntT",
    "PositiveIntT",
    "OddPositiveIntT",
    "EvenPositiveIntT",
    "SignT",
    "parse_rational",
]


def parse_rational(value: typing.Any) -> fractions.Fraction:
    """Coerce ``value`` to an exact :class:`fractions.Fraction`.

    Accepts fractions, integers and strings such as ``"-7/3"``. Floats are
    rejected: a float has already lost exactness.

    Example
    -------
        >>> from crankforge.types.field_types import parse_rational
        >>> parse_rational("-7/3")
        Fraction(-7, 3)
        >>> parse_rational(5)
        Fraction(5, 1)
    """
    if isinstance(value, fractions.Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return fractions.Fraction(value)
    if isinstance(value, str):
        try:
            return fractions.Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"not an exact rational: {value!r}") from err
    raise ValueError(f"expected an exact rational, got {type(value).__name__}")


def _rational_to_str(value: fractions.Fraction) -> str:
    return str(value)


#: An exact rational serialised as a ``"p/q"`` (or ``"p"``) string.
#:
#: Example:
#:     .. code-block:: python
#:
#:         class Coordinate(BaseModel):
#:             value: field_types.RationalStr
#:
#:         Coordinate(value="1/24").to_json()  # '{"value": "1/24"}'
RationalStr = typing.Annotated[
    fractions.Fraction,
    pydantic.PlainValidator(parse_rational),
    pydantic.PlainSerializer(_rational_to_str, return_type=str),
]


def _require_odd(value: int) -> int:
    if value % 2 == 0:
        raise ValueError(f"expected an odd integer, got {value}")
    return value


def _require_even(value: int) -> int:
    if value % 2:
        raise ValueError(f"expected an even integer, got {value}")
    return value


NaturalIntT = typing.Annotated[int, pydantic.Field(ge=0)]
PositiveIntT = typing.Annotated[int, pydantic.Field(ge=1)]
OddPositiveIntT = typing.Annotated[int, pydantic.Field(ge=1), pydantic.AfterValidator(_require_odd)]
EvenPositiveIntT = typing.Annotated[int, pydantic.Field(ge=2), pydantic.AfterValidator(_require_even)]
SignT = typing.Literal[1, -1]

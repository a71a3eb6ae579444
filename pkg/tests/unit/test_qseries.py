"""Unit tests for truncated q-series arithmetic."""

from fractions import Fraction

import pydantic
import pytest

from crankforge import exc, qseries
from crankforge.qseries import PochhammerFactor, PochhammerSpec, Series
from crankforge.types import payloads


def ints(series: Series) -> list[int]:
    return [int(c) for c in series.coeffs]


def random_series(rng, order: int = 50) -> Series:
    numerators = rng.integers(-20, 21, size=order + 1)
    denominators = rng.integers(1, 7, size=order + 1)
    return Series.from_coeffs([Fraction(int(p), int(q)) for p, q in zip(numerators, denominators, strict=True)], order)


def generalized_pentagonal_signs(limit: int) -> dict[int, int]:
    signs = {0: 1}
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        signs[k * (3 * k - 1) // 2] = (-1) ** k
        signs[k * (3 * k + 1) // 2] = (-1) ** k
        k += 1
    return signs


class TestSeriesConstruction:
    def test_from_coeffs_pads_with_zeros(self):
        series = Series.from_coeffs([1, 2], 4)
        assert series.trunc_order == 4
        assert ints(series) == [1, 2, 0, 0, 0]

    def test_from_coeffs_cuts_at_order(self):
        assert ints(Series.from_coeffs([1, 2, 3, 4], 1)) == [1, 2]

    def test_coefficients_are_fractions(self):
        series = Series.from_coeffs([1, Fraction(1, 2)], 1)
        assert all(isinstance(c, Fraction) for c in series.coeffs)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="expected 3 coefficients"):
            Series(2, (1, 2))

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            Series(-1, ())

    def test_monomial_beyond_order_is_zero(self):
        assert Series.monomial(5, 3).is_zero()
        assert ints(Series.monomial(2, 3, 7)) == [0, 0, 7, 0]


class TestSeriesAccessors:
    def test_coefficient_beyond_order_raises(self):
        with pytest.raises(IndexError):
            Series.one(3).coefficient(4)

    def test_negative_index_is_zero(self):
        assert Series.one(3).coefficient(-1) == 0

    def test_truncate_never_extends(self):
        series = Series.from_coeffs([1, 2, 3], 2)
        assert ints(series.truncate(1)) == [1, 2]
        with pytest.raises(ValueError):
            series.truncate(3)

    def test_valuation(self):
        assert Series.monomial(3, 5).valuation() == 3
        assert Series.zero(5).valuation() is None

    def test_is_integral(self):
        assert Series.from_coeffs([1, 2], 1).is_integral()
        assert not Series.from_coeffs([1, Fraction(1, 3)], 1).is_integral()

    def test_first_difference(self):
        a = Series.from_coeffs([1, 2, 3], 2)
        b = Series.from_coeffs([1, 2, 4], 2)
        assert a.first_difference(b) == 2
        assert a.first_difference(a) is None


class TestSeriesArithmetic:
    def test_equality_up_to_common_order(self):
        assert Series.from_coeffs([1, 2], 1) == Series.from_coeffs([1, 2, 3], 2)
        assert Series.from_coeffs([1, 2], 1) != Series.from_coeffs([1, 3, 3], 2)

    def test_unhashable(self):
        with pytest.raises(TypeError):
            hash(Series.one(2))

    def test_addition_truncates_to_shorter(self):
        total = Series.from_coeffs([1, 1, 1], 2) + Series.from_coeffs([1, 1], 1)
        assert total.trunc_order == 1
        assert ints(total) == [2, 2]

    def test_scalar_addition_touches_constant_term(self):
        assert ints(Series.from_coeffs([1, 1], 1) + 3) == [4, 1]
        assert ints(3 - Series.from_coeffs([1, 1], 1)) == [2, -1]

    def test_scalar_multiplication(self):
        half = Series.from_coeffs([2, 4], 1) * Fraction(1, 2)
        assert half.coeffs == (Fraction(1), Fraction(2))

    def test_product_truncates_to_shorter(self):
        product = Series.from_coeffs([1, 1, 0, 0], 3) * Series.from_coeffs([1, -1], 1)
        assert product.trunc_order == 1
        assert ints(product) == [1, 0]

    def test_power(self):
        one_plus_q = Series.from_coeffs([1, 1], 4)
        assert ints(one_plus_q**3) == [1, 3, 3, 1, 0]
        assert one_plus_q**0 == Series.one(4)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            _ = Series.one(2) ** -1

    def test_rational_product_matches_integer_scaling(self):
        a = Series.from_coeffs([Fraction(1, 2), Fraction(1, 3)], 2)
        b = Series.from_coeffs([Fraction(2, 5), 1, Fraction(-1, 7)], 2)
        expected = [
            Fraction(1, 5),
            Fraction(1, 2) + Fraction(2, 15),
            Fraction(-1, 14) + Fraction(1, 3),
        ]
        assert list(qseries.series_mul(a, b).coeffs) == expected


class TestRingLaws:
    """Exact ring laws on seeded random series through ``q^50``."""

    def test_associativity(self, rng):
        a, b, c = (random_series(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)

    def test_commutativity(self, rng):
        a, b = random_series(rng), random_series(rng)
        assert a * b == b * a
        assert a + b == b + a

    def test_distributivity(self, rng):
        a, b, c = (random_series(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a - b) * c == a * c - b * c

    def test_identities(self, rng):
        a = random_series(rng)
        assert a * Series.one(50) == a
        assert (a - a).is_zero()

    def test_two_sided_inverse(self, rng):
        a = random_series(rng, 30) + Series.one(30) * 25
        inverse = qseries.series_inverse(a)
        assert a * inverse == Series.one(30)
        assert inverse * a == Series.one(30)


class TestSeriesInverse:
    def test_partition_numbers(self):
        assert ints(qseries.series_inverse(qseries.euler_product(10))) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_non_unit_leading_coefficient(self):
        inverse = qseries.series_inverse(Series.from_coeffs([2, -1], 2))
        assert inverse.coeffs == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))

    def test_rational_series_with_unit_numerator(self):
        inverse = qseries.series_inverse(Series.from_coeffs([Fraction(1, 2), Fraction(1, 2)], 2))
        assert ints(inverse) == [2, -2, 2]

    def test_inverse_times_series_is_one(self):
        series = Series.from_coeffs([3, 1, Fraction(-2, 5), 7], 6)
        assert series * qseries.series_inverse(series) == Series.one(6)

    def test_zero_constant_term(self):
        with pytest.raises(exc.ZeroConstantTermError):
            qseries.series_inverse(Series.monomial(1, 3))

    def test_zero_constant_term_is_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            qseries.series_inverse(Series.zero(3))


class TestPochhammer:
    def test_euler_pentagonal_numbers(self):
        assert ints(qseries.euler_product(12)) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]

    def test_euler_pentagonal_theorem(self):
        order = 400
        signs = generalized_pentagonal_signs(order)
        assert ints(qseries.euler_product(order)) == [signs.get(n, 0) for n in range(order + 1)]

    def test_distinct_parts(self):
        distinct = qseries.pochhammer(PochhammerSpec((PochhammerFactor(1, -1),)), 6)
        assert ints(distinct) == [1, 1, 1, 2, 2, 3, 4]

    def test_odd_parts_equal_distinct_parts(self):
        odd = qseries.pochhammer(PochhammerSpec((PochhammerFactor(1),), modulus=2), 20)
        distinct = qseries.pochhammer(PochhammerSpec((PochhammerFactor(1, -1),)), 20)
        assert qseries.series_inverse(odd) == distinct

    def test_product_of_several_factors(self):
        spec = PochhammerSpec((PochhammerFactor(1, -1), PochhammerFactor(1)))
        expected = qseries.pochhammer(PochhammerSpec((PochhammerFactor(1, -1),)), 8) * qseries.euler_product(8)
        assert qseries.pochhammer(spec, 8) == expected

    def test_minus_one_doubles(self):
        doubled = qseries.pochhammer(PochhammerSpec((PochhammerFactor(0, -1),)), 3)
        assert ints(doubled) == [2, 2, 2, 4]

    def test_plus_one_rejected(self):
        with pytest.raises(exc.NonUnitProductError):
            qseries.pochhammer(PochhammerSpec((PochhammerFactor(0),)), 3)

    def test_empty_product_is_one(self):
        assert qseries.pochhammer(PochhammerSpec(), 4) == Series.one(4)

    def test_invalid_factor(self):
        with pytest.raises(ValueError):
            PochhammerFactor(-1)
        with pytest.raises(ValueError):
            PochhammerSpec(modulus=0)


class TestOperators:
    def test_substitute_power(self):
        assert ints(qseries.substitute_power(qseries.phi(1, 1, 4), 2)) == [0, 0, 1, 0, 3]

    def test_substitute_power_identity(self):
        series = qseries.partition_series(5)
        assert qseries.substitute_power(series, 1) is series

    def test_substitute_power_extraction(self, rng):
        series = random_series(rng, 40)
        for d in map(int, rng.integers(2, 8, size=4)):
            dilated = qseries.substitute_power(series, d)
            assert dilated.trunc_order == 40
            assert [dilated.coefficient(d * n) for n in range(40 // d + 1)] == list(series.coeffs[: 40 // d + 1])
            assert all(not c for n, c in enumerate(dilated.coeffs) if n % d)

    def test_substitute_power_rejects_zero(self):
        with pytest.raises(ValueError):
            qseries.substitute_power(Series.one(3), 0)

    def test_delta_q(self):
        assert ints(qseries.delta_q(qseries.partition_series(4))) == [0, 1, 4, 9, 20]

    def test_delta_q_is_a_derivation(self):
        a, b = qseries.partition_series(15), qseries.overpartition_series(15)
        assert qseries.delta_q(a * b) == qseries.delta_q(a) * b + a * qseries.delta_q(b)


class TestPhi:
    def test_sigma_one(self):
        assert ints(qseries.phi(1, 1, 8)) == [0, 1, 3, 4, 7, 6, 12, 8, 15]

    def test_sigma_three(self):
        assert ints(qseries.phi(3, 1, 4)) == [0, 1, 9, 28, 73]

    def test_dilated(self):
        assert ints(qseries.phi(3, 3, 6)) == [0, 0, 0, 1, 0, 0, 9]

    def test_even_index_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            qseries.phi(2, 1, 4)

    def test_zero_dilation_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            qseries.phi(1, 0, 4)


class TestGeneratingFunctions:
    def test_overpartition_numbers(self):
        assert ints(qseries.overpartition_series(8)) == [1, 2, 4, 8, 14, 24, 40, 64, 100]

    def test_partition_series_is_cached(self):
        assert qseries.partition_series(30) is qseries.partition_series(30)

    def test_euler_product_dilated(self):
        assert qseries.euler_product(10, 2) == qseries.substitute_power(qseries.euler_product(10), 2)


class TestSeriesPayload:
    def test_round_trip(self):
        series = Series.from_coeffs([1, Fraction(-7, 3), 0], 2)
        assert Series.from_payload(series.to_payload()) == series

    def test_json_uses_rational_strings(self):
        text = Series.from_coeffs([1, Fraction(-7, 3)], 1).to_payload().to_json(indent=None)
        assert '"coeffs":["1","-7/3"]' in text
        assert '"schema":1' in text

    def test_length_checked(self):
        with pytest.raises(pydantic.ValidationError):
            payloads.SeriesPayload(trunc_order=2, coeffs=["1"])

    def test_floats_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            payloads.SeriesPayload(trunc_order=0, coeffs=[0.5])

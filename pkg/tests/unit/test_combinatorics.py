"""Unit tests for partitions, overpartitions and crank statistics."""

import io
import logging

import pydantic
import pytest

from crankforge import combinatorics, exc
from crankforge.combinatorics import Overpartition, Partition


def over(*tokens: str) -> Overpartition:
    return Overpartition.from_tokens(tokens)


class TestPartition:
    def test_from_parts_sorts(self):
        assert Partition.from_parts([1, 3, 2]).parts == (3, 2, 1)

    def test_rejects_increasing_parts(self):
        with pytest.raises(ValueError, match="non-increasing"):
            Partition((1, 2))

    def test_rejects_non_positive_parts(self):
        with pytest.raises(ValueError, match="positive"):
            Partition((2, 0))

    def test_weight_and_length(self):
        partition = Partition((3, 1, 1))
        assert partition.weight == 5
        assert len(partition) == 3

    def test_str(self):
        assert str(Partition((3, 1))) == "3 1"
        assert str(Partition()) == "()"


class TestOverpartition:
    def test_from_tokens_orders_entries(self):
        assert over("1", "2", "2o").tokens() == ["2o", "2", "1"]

    def test_weight_and_parts(self):
        o = over("4", "2o", "1")
        assert o.weight == 7
        assert o.parts == (4, 2, 1)

    def test_overlined_twice_rejected(self):
        with pytest.raises(ValueError, match="overlined twice"):
            Overpartition(((2, True), (2, True)))

    def test_overlined_after_plain_rejected(self):
        with pytest.raises(ValueError, match="before its plain copies"):
            Overpartition(((2, False), (2, True)))

    def test_increasing_rejected(self):
        with pytest.raises(ValueError):
            Overpartition(((1, False), (2, False)))

    def test_str(self):
        assert str(over("3o", "1")) == "3o 1"
        assert str(Overpartition()) == "()"


class TestEnumeration:
    def test_partitions_in_descending_lexicographic_order(self):
        assert [str(p) for p in combinatorics.enumerate_partitions(4)] == ["4", "3 1", "2 2", "2 1 1", "1 1 1 1"]

    def test_overpartitions_of_three(self):
        assert [str(o) for o in combinatorics.enumerate_overpartitions(3)] == [
            "3o",
            "3",
            "2o 1o",
            "2o 1",
            "2 1o",
            "2 1",
            "1o 1 1",
            "1 1 1",
        ]

    @pytest.mark.parametrize("n", range(13))
    def test_partition_counts_match_enumeration(self, n):
        assert len(combinatorics.enumerate_partitions(n)) == combinatorics.partition_count(n)

    @pytest.mark.parametrize("n", range(11))
    def test_overpartition_counts_match_enumeration(self, n):
        overpartitions = combinatorics.enumerate_overpartitions(n)
        assert len(overpartitions) == combinatorics.overpartition_count(n)
        assert len(set(overpartitions)) == len(overpartitions)

    def test_enumeration_guard(self):
        with pytest.raises(exc.EnumerationBudgetExceededError) as err:
            combinatorics.enumerate_overpartitions(combinatorics.ENUMERATION_LIMIT + 1)
        assert err.value.requested == 41
        assert err.value.limit == 40

    def test_negative_weight_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            combinatorics.enumerate_partitions(-1)


class TestCrank:
    @pytest.mark.parametrize(
        ("parts", "expected"),
        [
            ((), 0),
            ((1,), -1),
            ((4,), 4),
            ((2, 2), 2),
            ((3, 1), 0),
            ((2, 1, 1), -2),
            ((1, 1, 1), -3),
            ((5, 4, 1), 1),
        ],
    )
    def test_crank(self, parts, expected):
        assert combinatorics.crank(Partition(parts)) == expected

    def test_residual_partition(self):
        o = over("4", "2o", "1")
        assert combinatorics.residual_partition(o, 1).parts == (4, 1)
        assert combinatorics.residual_partition(o, 2).parts == (2,)
        assert combinatorics.residual_partition(o, 3).parts == ()

    def test_residual_crank(self):
        o = over("4", "2o", "1")
        assert combinatorics.residual_crank(o, 1) == 0
        assert combinatorics.residual_crank(o, 2) == 2

    def test_empty_partition_is_flagged(self, caplog):
        caplog.set_level(logging.DEBUG, logger="crankforge.combinatorics")
        assert Partition(()).is_empty
        assert combinatorics.crank(Partition(())) == 0
        assert combinatorics.residual_crank(over("3o"), 3) == 0
        messages = [record.getMessage() for record in caplog.records]
        assert messages == [
            "Crank of the empty partition taken as 0",
            "Empty residual partition of 3o at k=3; crank taken as 0",
        ]

    def test_nonempty_partition_is_not_flagged(self, caplog):
        caplog.set_level(logging.DEBUG, logger="crankforge.combinatorics")
        assert combinatorics.crank(Partition((3, 1))) == 0
        assert not caplog.records

    def test_omega_k(self):
        assert combinatorics.omega_k(over("2", "2", "1o"), 2) == 2
        assert combinatorics.omega_k(over("2o", "1"), 2) == 0

    def test_modulus_validated(self):
        with pytest.raises(pydantic.ValidationError):
            combinatorics.residual_crank(over("1"), 0)


class TestCrankTable:
    def test_weight_one_generating_convention(self):
        assert combinatorics.crank_table_bruteforce(1, 1).column(1) == {-1: 1, 1: 1}

    def test_weight_one_raw_convention(self):
        assert combinatorics.crank_table_bruteforce(1, 1, "raw").column(1) == {-1: 1, 0: 1}

    def test_weight_two_column(self):
        assert combinatorics.crank_table_bruteforce(1, 2).column(2) == {-2: 1, -1: 1, 1: 1, 2: 1}

    def test_zero_counts_not_stored(self):
        table = combinatorics.crank_table_bruteforce(1, 2)
        assert (0, 2) not in table.counts
        assert table.count(0, 2) == 0

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_column_sums_are_overpartition_counts(self, k):
        table = combinatorics.crank_table_bruteforce(k, 8)
        assert [table.column_sum(n) for n in range(9)] == [combinatorics.overpartition_count(n) for n in range(9)]

    def test_generating_convention_is_symmetric(self):
        assert combinatorics.crank_table_bruteforce(2, 10).is_symmetric()
        assert not combinatorics.crank_table_bruteforce(1, 3, "raw").is_symmetric()

    def test_moments(self):
        table = combinatorics.crank_table_bruteforce(1, 3)
        assert [table.moment(2, n) for n in range(4)] == [0, 2, 10, 28]
        assert [table.moment(1, n) for n in range(4)] == [0, 0, 0, 0]
        assert table.positive_moment(2, 2) == 5

    def test_second_moment_for_k2(self):
        assert combinatorics.crank_table_bruteforce(2, 3).moment(2, 3) == 4

    def test_count_outside_range(self):
        with pytest.raises(IndexError):
            combinatorics.crank_table_bruteforce(1, 2).count(0, 3)

    def test_residue_class_counts(self):
        table = combinatorics.crank_table_bruteforce(1, 2)
        assert table.residue_class_counts(2, 2) == [2, 2]

    def test_diff(self):
        generating = combinatorics.crank_table_bruteforce(1, 1)
        raw = combinatorics.crank_table_bruteforce(1, 1, "raw")
        assert generating.diff(generating) == []
        assert generating.diff(raw) == [(1, 0, 0, 1), (1, 1, 1, 0)]

    def test_write_csv(self):
        stream = io.StringIO()
        combinatorics.crank_table_bruteforce(1, 1).write_csv(stream)
        assert stream.getvalue() == "k,n,m,count\n1,0,0,1\n1,1,-1,1\n1,1,1,1\n"

    def test_payload(self):
        payload = combinatorics.crank_table_bruteforce(2, 2).to_payload()
        assert payload.k == 2
        assert payload.objects == "overpartitions"
        assert payload.rows[0].model_dump() == {"k": 2, "n": 0, "m": 0, "count": 1}

    def test_ordinary_table(self):
        table = combinatorics.ordinary_crank_table_bruteforce(4)
        assert table.objects == "partitions"
        assert [table.column_sum(n) for n in range(5)] == [1, 1, 2, 3, 5]
        assert table.column(4) == {-4: 1, -2: 1, 0: 1, 2: 1, 4: 1}

    def test_table_guard(self):
        with pytest.raises(exc.EnumerationBudgetExceededError):
            combinatorics.crank_table_bruteforce(3, 50)


class TestWeightedSums:
    def test_nov(self):
        assert combinatorics.nov(1, 3) == 14
        assert combinatorics.nov(2, 3) == 4

    def test_ov(self):
        assert combinatorics.ov(1, 2) == 3
        assert combinatorics.ov(2, 3) == 4

    def test_ov_is_nov_difference(self):
        for n in range(10):
            assert combinatorics.ov(1, n) == combinatorics.nov(1, n) - combinatorics.nov(2, n)

    def test_weighted_crank_sum_raw(self):
        assert combinatorics.weighted_crank_sum(1, 1) == -1
        assert combinatorics.weighted_crank_sum(1, 2) == -5

    def test_weighted_crank_sum_generating(self):
        assert combinatorics.weighted_crank_sum(1, 1, "generating") == 0


class TestEulerDilation:
    def test_forward(self):
        assert combinatorics.euler_dilation(Partition((4, 2)), 2).parts == (2, 2, 2)
        assert combinatorics.euler_dilation(Partition((6,)), 1).parts == (3, 3)

    def test_inverse(self):
        assert combinatorics.euler_dilation(Partition((2, 2, 2)), 2, "inverse").parts == (4, 2)
        assert combinatorics.euler_dilation(Partition((3, 3)), 1, "inverse").parts == (6,)

    def test_round_trip(self):
        for partition in combinatorics.enumerate_partitions(12):
            if len(set(partition.parts)) == len(partition.parts):
                image = combinatorics.euler_dilation(partition, 1)
                assert combinatorics.euler_dilation(image, 1, "inverse") == partition

    def test_repeated_part_rejected(self):
        with pytest.raises(exc.PreconditionViolatedError) as err:
            combinatorics.euler_dilation(Partition((4, 4)), 2)
        assert err.value.offending == 4

    def test_indivisible_part_rejected(self):
        with pytest.raises(exc.PreconditionViolatedError) as err:
            combinatorics.euler_dilation(Partition((4, 3)), 2)
        assert err.value.offending == 3

    def test_inverse_rejects_even_multiple(self):
        with pytest.raises(exc.PreconditionViolatedError) as err:
            combinatorics.euler_dilation(Partition((4,)), 2, "inverse")
        assert err.value.offending == 4

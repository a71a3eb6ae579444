"""Unit tests for Eisenstein series, spanning sets and membership certificates."""

from fractions import Fraction

import pydantic
import pytest

from crankforge import exc, linalg, qseries, quasimod
from crankforge.types import certificates


def ints(series: qseries.Series) -> list[int]:
    return [int(c) for c in series.coeffs]


def combination(span, coordinates, order: int) -> qseries.Series:
    out = qseries.Series.zero(order)
    for monomial, coordinate in zip(span, coordinates, strict=True):
        out = out + quasimod.expand_monomial(monomial, order) * coordinate
    return out


def labels(span: list[certificates.QMonomial]) -> list[str]:
    return [monomial.label for monomial in span]


class TestBernoulli:
    @pytest.mark.parametrize(
        ("n", "expected"),
        [(0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (4, Fraction(-1, 30)), (6, Fraction(1, 42))],
    )
    def test_values(self, n, expected):
        assert quasimod.bernoulli(n) == expected

    def test_odd_values_vanish(self):
        assert all(quasimod.bernoulli(n) == 0 for n in range(3, 20, 2))

    def test_negative_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            quasimod.bernoulli(-1)
        with pytest.raises(ValueError):
            quasimod.BernoulliCache().get(-1)


class TestEisenstein:
    def test_e2(self):
        assert ints(quasimod.eisenstein(2, 1, 3)) == [1, -24, -72, -96]

    def test_e4(self):
        assert ints(quasimod.eisenstein(4, 1, 2)) == [1, 240, 2160]

    def test_e8_is_e4_squared(self):
        e4 = quasimod.eisenstein(4, 1, 40)
        assert quasimod.eisenstein(8, 1, 40) == e4 * e4

    def test_dilated(self):
        assert ints(quasimod.eisenstein(6, 2, 4)) == [1, 0, -504, 0, -16632]

    def test_odd_weight_rejected(self):
        with pytest.raises(pydantic.ValidationError):
            quasimod.eisenstein(3, 1, 4)

    def test_e2_derivative(self):
        assert quasimod.verify_e2_derivative(50)

    def test_e2_derivative_detects_perturbation(self):
        perturbed = quasimod.eisenstein(4, 1, 50) + qseries.Series.monomial(5, 50)
        assert not quasimod.verify_e2_derivative(50, e4=perturbed)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_ramanujan_derivatives(self, d):
        for name, (lhs, rhs) in quasimod.ramanujan_derivatives(30, d).items():
            assert lhs == rhs, name


class TestLifting:
    def test_constant_lifts_to_zero(self):
        assert quasimod.verify_lifting(quasimod.TaggedForm.constant(20)).is_zero()

    def test_e4_lifts_to_e6(self):
        lifted = quasimod.verify_lifting(quasimod.TaggedForm.eisenstein(4, 1, 60))
        assert lifted == quasimod.eisenstein(6, 1, 60) * -4

    def test_e6_lifts_to_e4_squared(self):
        e4 = quasimod.eisenstein(4, 1, 60)
        lifted = quasimod.verify_lifting(quasimod.TaggedForm.eisenstein(6, 1, 60))
        assert lifted == e4 * e4 * -6

    def test_truncation_override(self):
        assert quasimod.verify_lifting(quasimod.TaggedForm.eisenstein(4, 1, 60), trunc=10).trunc_order == 10

    def test_tagged_form_names(self):
        form = quasimod.TaggedForm.eisenstein(4, 2, 10)
        assert (form.name, form.level, form.modular) == ("E4(q^2)", 2, True)
        assert not quasimod.TaggedForm.eisenstein(2, 1, 10).modular


class TestSpanningSet:
    def test_level_one_weight_two(self):
        assert labels(quasimod.spanning_set(1, 1)) == ["1", "E2(q)"]

    def test_level_two_weight_two(self):
        assert labels(quasimod.spanning_set(2, 1)) == ["1", "E2(q)", "E2(q^2)"]

    def test_level_one_weight_four(self):
        assert labels(quasimod.spanning_set(1, 2)) == ["1", "E2(q)", "E2(q)^2", "E4(q)"]

    def test_level_two_weight_four(self):
        assert len(quasimod.spanning_set(2, 2)) == 8

    def test_phi_generators_come_first(self):
        span = quasimod.spanning_set(1, 2, include_phi=True)
        assert labels(span)[:2] == ["Phi1(q)", "Phi3(q)"]
        assert len(span) == 6

    def test_modular_exact_weight(self):
        assert labels(quasimod.spanning_set(1, 3, include_e2=False, exact_weight=True)) == ["E6(q)"]
        assert labels(quasimod.spanning_set(1, 4, include_e2=False, exact_weight=True)) == ["E4(q)^2"]

    def test_weights_never_exceed_bound(self):
        assert max(monomial.weight for monomial in quasimod.spanning_set(6, 2)) == 4

    def test_expand_monomial(self):
        monomial = quasimod.phi_monomial((2, 0), 1)
        assert monomial.label == "Phi1(q)^2"
        assert quasimod.expand_monomial(monomial, 20) == qseries.phi(1, 1, 20) ** 2


class TestSolveInSpan:
    def test_phi_one_in_weight_two(self):
        cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), quasimod.spanning_set(1, 1), target_name="Phi1")
        assert cert.support() == {"1": Fraction(1, 24), "E2(q)": Fraction(-1, 24)}
        assert cert.no_constant_term
        assert cert.target == "Phi1"
        assert cert.max_weight == 2
        assert quasimod.verify_certificate(cert, qseries.phi(1, 1, 60))

    def test_insufficient_truncation(self):
        with pytest.raises(exc.InsufficientTruncationError):
            quasimod.solve_in_span(qseries.phi(1, 1, 10), quasimod.spanning_set(1, 1))

    def test_first_inconsistent_order(self):
        target = quasimod.eisenstein(4, 1, 10)
        with pytest.raises(exc.NoSolutionWithinTruncationError) as err:
            quasimod.solve_in_span(target, quasimod.spanning_set(1, 1), margin=0)
        assert err.value.order == 2

    def test_constant_term_required(self):
        with pytest.raises(exc.NoSolutionWithinTruncationError) as err:
            quasimod.solve_in_span(
                quasimod.eisenstein(2, 1, 60), quasimod.spanning_set(1, 1), require_no_constant_term=True
            )
        assert err.value.order == 0

    def test_tampered_certificate_fails(self):
        target = qseries.phi(1, 1, 60)
        cert = quasimod.solve_in_span(target, quasimod.spanning_set(1, 1))
        tampered = cert.model_copy(update={"coordinates": [Fraction(1, 24), Fraction(-1, 25)]})
        assert not quasimod.verify_certificate(tampered, target)

    def test_short_target_fails_verification(self):
        cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), quasimod.spanning_set(1, 1))
        assert not quasimod.verify_certificate(cert, qseries.phi(1, 1, 30))

    def test_certificate_json_round_trip(self):
        cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), quasimod.spanning_set(1, 1))
        loaded = certificates.MembershipCertificate.model_validate_json(cert.to_json())
        assert loaded == cert
        assert '"1/24"' in cert.to_json()

    def test_rank_recorded(self):
        cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), quasimod.spanning_set(1, 1))
        assert cert.rank == 2
        assert not cert.dependent

    def test_dependent_span_refused(self):
        span = quasimod.spanning_set(1, 1, include_phi=True)
        with pytest.raises(exc.InsufficientTruncationError, match="Rank 2 of 3"):
            quasimod.solve_in_span(qseries.phi(1, 1, 60), span)

    def test_dependent_span_allowed(self):
        span = quasimod.spanning_set(1, 1, include_phi=True)
        cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), span, allow_dependent=True)
        assert cert.rank == 2
        assert cert.dependent
        assert cert.support() == {"Phi1(q)": 1}
        assert quasimod.verify_certificate(cert, qseries.phi(1, 1, 60))

    def test_too_few_informative_rows_refused(self):
        span = [quasimod.phi_monomial(exponents, 20) for exponents in [(3, 0, 0), (1, 1, 0), (0, 0, 1)]]
        target = combination(span, [1, 30, 60], 53)
        with pytest.raises(exc.InsufficientTruncationError):
            quasimod.solve_in_span(target, span, margin=0)
        cert = quasimod.solve_in_span(target, span, margin=0, allow_dependent=True)
        assert cert.rank == 2
        assert quasimod.verify_certificate(cert, target)


class TestRandomCombinations:
    """Seeded integer combinations of spanning monomials are recovered exactly."""

    def test_level_one_weight_six(self, rng):
        span = quasimod.spanning_set(1, 3)
        coordinates = [int(c) for c in rng.integers(-50, 51, size=len(span))]
        cert = quasimod.solve_in_span(combination(span, coordinates, 60), span, 60)
        assert cert.rank == len(span) == 7
        assert cert.coordinates == [Fraction(c) for c in coordinates]

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_dilated_phi_monomials(self, rng, d):
        span = [quasimod.phi_monomial(exponents, d) for exponents in [(3, 0, 0), (1, 1, 0), (0, 0, 1)]]
        coordinates = [int(c) for c in rng.integers(-100, 101, size=3)]
        cert = quasimod.solve_in_span(combination(span, coordinates, 80), span, 80)
        assert cert.rank == 3
        assert cert.coordinates == [Fraction(c) for c in coordinates]

    def test_incremental_solver_random_system(self, rng):
        matrix = rng.integers(-9, 10, size=(12, 6))
        unknowns = [int(x) for x in rng.integers(-20, 21, size=6)]
        solver = linalg.IncrementalSolver(6)
        for raw in matrix:
            row = [int(a) for a in raw]
            assert solver.add_equation(row, sum(a * x for a, x in zip(row, unknowns, strict=True)))
        assert solver.rank == 6
        assert solver.solution() == [Fraction(x) for x in unknowns]


class TestRepresentation:
    def test_second_moment(self):
        assert quasimod.find_representation(1, 1, 30).alphas == {"(1)": 1}

    def test_fourth_moment(self):
        assert quasimod.find_representation(2, 2, 60).alphas == {"(0,1)": 1, "(2,0)": 6}

    def test_sixth_moment(self):
        assert quasimod.find_representation(1, 3, 60).alphas == {"(0,0,1)": 1, "(1,1,0)": 30, "(3,0,0)": 60}

    def test_metadata(self):
        representation = quasimod.find_representation(3, 1, 40)
        assert (representation.k, representation.j, representation.trunc_order) == (3, 1, 40)

    @pytest.mark.parametrize(("k", "j", "trunc"), [(3, 3, 5), (5, 2, 4), (2, 2, 20), (1, 3, 12)])
    def test_short_truncation_raises(self, k, j, trunc):
        with pytest.raises(exc.InsufficientTruncationError):
            quasimod.find_representation(k, j, trunc)

    def test_margin_counts_powers_of_q_to_the_k(self):
        with pytest.raises(exc.InsufficientTruncationError):
            quasimod.find_representation(3, 1, 32)
        assert quasimod.find_representation(3, 1, 33).alphas == {"(1)": 1}

    def test_dilated_sixth_moment(self):
        assert quasimod.find_representation(3, 3, 60).alphas == {"(0,0,1)": 1, "(1,1,0)": 30, "(3,0,0)": 60}


class TestCertifyTheorem:
    def test_second_moment_of_second_residual_crank(self):
        cert = quasimod.certify_theorem(2, 1, 0, 1, 100)
        assert cert.level == 2
        assert cert.support() == {"Phi1(q^2)": 2}
        assert cert.dependent
        assert cert.rank == 3
        assert quasimod.verify_certificate(cert, quasimod.theorem_target(2, 1, 0, 100))

    def test_level_is_lcm(self):
        assert quasimod.certify_theorem(3, 1, 0, 1, 100).level == 6

    def test_weight_precondition(self):
        with pytest.raises(exc.PreconditionViolatedError) as err:
            quasimod.certify_theorem(1, 2, 3, 2)
        assert err.value.offending == (2, 3, 2)


class TestDeltaClosure:
    def test_level_one(self):
        certs = quasimod.delta_closure(1, 1, 80)
        assert [cert.target for cert in certs] == ["delta(1)", "delta(E2(q))"]
        assert certs[0].support() == {}
        assert certs[1].support() == {"E2(q)^2": Fraction(1, 12), "E4(q)": Fraction(-1, 12)}
        assert all(cert.no_constant_term for cert in certs)

"""Identity suites run by ``crankforge verify <suite>``.

Each suite compares two independently computed sides of an identity and
returns one :class:`~crankforge.types.reports.IdentityReport` per checked
family. :func:`run_suite` collects them into a
:class:`~crankforge.types.reports.SuiteReport` ordered by item name.

Example:
    >>> from crankforge import run_settings, verify
    >>> report = verify.run_suite("nov", run_settings.RunConfig(), verify.SuiteOptions(k=2, n=3))
    >>> report.passed, report.items[0].detail["values"][-1]
    (True, [4, 4])
"""

import dataclasses
import fractions
import logging
import typing

import numpy as np

from . import combinatorics, cranks, exc, numeric, qseries, quasimod, run_settings, types
from .types import reports

logger = logging.getLogger(__name__)

__all__ = [
    "SuiteOptions",
    "SUITES",
    "suite_names",
    "run_suite",
]

IdentityReport = reports.IdentityReport


@dataclasses.dataclass(frozen=True, kw_only=True)
class SuiteOptions:
    """Per-invocation narrowing of a suite.

    Attributes
    ----------
    k : int, optional
        Restrict to one residual modulus (or level, for closure checks).
    n : int, optional
        Largest weight or power of ``q`` to compare; defaults per suite.
    cases : tuple of int
        Explicit weights for the equidistribution suite.
    j, m, l : int, optional
        Theorem parameters for the ``quasimod`` suite.
    """

    k: typing.Optional[int] = None
    n: typing.Optional[int] = None
    cases: tuple[int, ...] = (6, 17, 28)
    j: typing.Optional[int] = None
    m: typing.Optional[int] = None
    l: typing.Optional[int] = None  # noqa: E741


DEFAULT_SUITE_OPTIONS = SuiteOptions()

SuiteFn = typing.Callable[[run_settings.RunConfig, SuiteOptions], list[IdentityReport]]


def _compare(
    name: str,
    lhs: typing.Sequence[typing.Any],
    rhs: typing.Sequence[typing.Any],
    start: int = 0,
    **detail: typing.Any,
) -> IdentityReport:
    """Item report for ``lhs[i] == rhs[i]``, indices counted from ``start``."""
    failure = next((start + i for i, (a, b) in enumerate(zip(lhs, rhs, strict=True)) if a != b), None)
    if failure is not None:
        logger.warning(f"{name}: sides differ first at {failure}")
    return IdentityReport(
        name=name,
        passed=failure is None,
        checked_through=start + len(lhs) - 1,
        first_failure=failure,
        detail=detail,
    )


def _series_report(name: str, lhs: qseries.Series, rhs: qseries.Series, **detail: typing.Any) -> IdentityReport:
    failure = lhs.first_difference(rhs)
    if failure is not None:
        logger.warning(f"{name}: coefficients differ first at q^{failure}")
    return IdentityReport(
        name=name,
        passed=failure is None,
        checked_through=min(lhs.trunc_order, rhs.trunc_order),
        first_failure=failure,
        detail=detail,
    )


def _moduli(options: SuiteOptions, default: typing.Iterable[int]) -> list[int]:
    return [options.k] if options.k is not None else list(default)


def _weight_bound(config: run_settings.RunConfig, options: SuiteOptions, default: int) -> int:
    """Largest weight of a brute-force suite; an explicit ``n`` may not pass the enumeration cap."""
    if options.n is None:
        return min(default, config.enumeration_cap)
    if options.n > config.enumeration_cap:
        raise exc.EnumerationBudgetExceededError(options.n, config.enumeration_cap)
    return options.n


def _second_moments(k: int, N: int) -> list[int]:  # noqa: N803
    moments = cranks.moment_series(k, 2, N)
    return [moments.coefficient(n) for n in range(N + 1)]


# ----------------------------------------------------------------------
# Combinatorial identities
# ----------------------------------------------------------------------


def oracle_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Brute-force crank tables against product-formula tables."""
    N = _weight_bound(config, options, 20)  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 5)):
        brute = combinatorics.crank_table_bruteforce(k, N)
        series = cranks.crank_table_from_series(k, N)
        diff = brute.diff(series)
        out.append(
            IdentityReport(
                name=f"oracle[k={k}]",
                passed=not diff,
                checked_through=N,
                first_failure=diff[0][0] if diff else None,
                detail={"differences": [list(entry) for entry in diff[:10]]},
            )
        )
        out.append(
            _compare(
                f"oracle-column-sums[k={k}]",
                [brute.column_sum(n) for n in range(N + 1)],
                [combinatorics.overpartition_count(n) for n in range(N + 1)],
            )
        )
        out.append(
            IdentityReport(
                name=f"oracle-symmetry[k={k}]",
                passed=brute.is_symmetric(),
                checked_through=N,
            )
        )
    return out


def dyson_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``M2(n) = 2 n p(n)`` from the crank series and from corrected enumeration."""
    N = options.n if options.n is not None else 40  # noqa: N806
    expected = [2 * n * combinatorics.partition_count(n) for n in range(N + 1)]
    moments = cranks.crank_series(N).moment(2)
    out = [_compare("dyson[series]", [int(c) for c in moments.coeffs], expected)]
    brute_n = min(N, 15, config.enumeration_cap)
    table = combinatorics.ordinary_crank_table_bruteforce(brute_n)
    enumerated = [table.moment(2, n) for n in range(brute_n + 1)]
    out.append(_compare("dyson[enumeration]", enumerated, expected[: brute_n + 1]))
    for ell in (2, 4, 6):
        out.append(
            _series_report(
                f"cumulant-moments[ell={ell}]",
                cranks.crank_series(N).moment(ell),
                cranks.moment_from_cumulants(ell, N),
            )
        )
    return out


def _ordinary_weighted_crank_sum(n: int) -> int:
    return sum(
        partition.parts.count(1) * combinatorics.crank(partition) for partition in combinatorics.enumerate_partitions(n)
    )


def chern_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``M[k]_2(n) = -2 sum omega_k cr_k`` with the raw crank, and ``sum omega cr = -n p(n)``."""
    N = _weight_bound(config, options, 20)  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 4)):
        out.append(
            _compare(
                f"chern[k={k}]",
                [-2 * combinatorics.weighted_crank_sum(k, n, "raw") for n in range(N + 1)],
                _second_moments(k, N),
                convention="raw",
            )
        )
    out.append(
        _compare(
            "chern[ordinary]",
            [_ordinary_weighted_crank_sum(n) for n in range(N + 1)],
            [-n * combinatorics.partition_count(n) for n in range(N + 1)],
        )
    )
    return out


def nov_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``nov_k(n) = (k/2) M[k]_2(n)``."""
    N = _weight_bound(config, options, 25)  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 5)):
        lhs = [combinatorics.nov(k, n) for n in range(N + 1)]
        rhs = [fractions.Fraction(k, 2) * value for value in _second_moments(k, N)]
        out.append(_compare(f"nov[k={k}]", lhs, rhs, values=[[a, int(b)] for a, b in zip(lhs, rhs, strict=True)]))
    return out


def ov_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``ov_k(n) = nov_k(n) - nov_{2k}(n)``."""
    N = _weight_bound(config, options, 25)  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 4)):
        lhs = [combinatorics.ov(k, n) for n in range(N + 1)]
        rhs = [combinatorics.nov(k, n) - combinatorics.nov(2 * k, n) for n in range(N + 1)]
        out.append(_compare(f"ov[k={k}]", lhs, rhs, values=[[a, b] for a, b in zip(lhs, rhs, strict=True)]))
    return out


def ov_corollary_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``ov_k(n) = (k/2) M[k]_2(n) - k M[2k]_2(n)``."""
    N = _weight_bound(config, options, 25)  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 4)):
        single, double = _second_moments(k, N), _second_moments(2 * k, N)
        lhs = [combinatorics.ov(k, n) for n in range(N + 1)]
        rhs = [fractions.Fraction(k, 2) * a - k * b for a, b in zip(single, double, strict=True)]
        out.append(_compare(f"ov-corollary[k={k}]", lhs, rhs))
    return out


def bijection_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Dilated Euler map: round trip and codomain on every valid partition."""
    N = options.n if options.n is not None else 30  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 5)):
        failures = []
        checked = 0
        for n in range(N + 1):
            for partition in combinatorics.enumerate_partitions(n):
                parts = partition.parts
                if len(set(parts)) != len(parts) or any(part % k for part in parts):
                    continue
                checked += 1
                image = combinatorics.euler_dilation(partition, k)
                in_codomain = all(part % k == 0 and (part // k) % 2 for part in image.parts)
                back = combinatorics.euler_dilation(image, k, "inverse")
                if back != partition or image.weight != n or not in_codomain:
                    failures.append(n)
        out.append(
            IdentityReport(
                name=f"bijection[k={k}]",
                passed=not failures,
                checked_through=N,
                first_failure=min(failures) if failures else None,
                detail={"partitions": checked},
            )
        )
    return out


# ----------------------------------------------------------------------
# Moment scans
# ----------------------------------------------------------------------


def inequality_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``d M[dk]_2(n) <= M[k]_2(n)``; equality sets are reported, not asserted."""
    N = options.n if options.n is not None else 25  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 4)):
        for d in range(1, 4):
            scan = cranks.inequality_scan(d, k, 2, N)
            out.append(
                IdentityReport(
                    name=f"inequality[d={d},k={k}]",
                    passed=scan.holds,
                    checked_through=N,
                    first_failure=scan.violations[0] if scan.violations else None,
                    detail={"label": scan.label, "equality_set": scan.equality_set},
                )
            )
    return out


def monotonicity_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``M[k+1]_ell+(n) <= M[k]_ell+(n)``; asserted for ``ell = 2``, reported for ``ell = 4``."""
    N = options.n if options.n is not None else 25  # noqa: N806
    out = []
    for k in _moduli(options, range(1, 4)):
        for ell in (2, 4):
            scan = cranks.monotonicity_scan(k, ell, N)
            out.append(
                IdentityReport(
                    name=f"monotonicity[k={k},ell={ell}]",
                    passed=scan.holds or ell != 2,
                    checked_through=N,
                    first_failure=scan.violations[0] if scan.violations else None,
                    detail={"label": scan.label, "holds": scan.holds, "equality_set": scan.equality_set},
                )
            )
    return out


def ramanujan_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Crank residues mod 11 are equidistributed at the given weights."""
    out = []
    for n in options.cases:
        counts = cranks.crank_equidistribution(n, 11)
        total = combinatorics.partition_count(n)
        out.append(
            IdentityReport(
                name=f"ramanujan[n={n}]",
                passed=total % 11 == 0 and counts == [total // 11] * 11,
                checked_through=n,
                detail={"residue_counts": counts, "partitions": total},
            )
        )
    return out


# ----------------------------------------------------------------------
# Exact q-series identities
# ----------------------------------------------------------------------


def e2_derivative_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Ramanujan's derivative identities at ``q`` and ``q^2``."""
    N = options.n if options.n is not None else config.trunc_order  # noqa: N806
    out = []
    for d in (1, 2):
        for name, (lhs, rhs) in quasimod.ramanujan_derivatives(N, d).items():
            out.append(_series_report(f"ramanujan-derivative[{name},d={d}]", lhs, rhs))
    return out


def overpartition_derivative_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``delta_q(Pbar) = 2 Pbar (Phi1(q) - Phi1(q^2))``."""
    N = options.n if options.n is not None else config.trunc_order  # noqa: N806
    pbar = qseries.overpartition_series(N)
    rhs = pbar * (qseries.phi(1, 1, N) - qseries.phi(1, 2, N)) * 2
    return [_series_report("overpartition-derivative", qseries.delta_q(pbar), rhs)]


def representation_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Integer Phi-monomial representations of ``Cbar[k]_{2j}``, checked against enumeration."""
    brute_n = min(20, config.enumeration_cap)
    out = []
    for k in _moduli(options, range(1, 4)):
        table = combinatorics.crank_table_bruteforce(k, brute_n)
        for j in [options.j] if options.j is not None else range(1, 4):
            name = f"representation[k={k},j={j}]"
            try:
                representation = quasimod.find_representation(k, j, config.trunc_order)
            except exc.CrankForgeError as err:
                logger.warning(f"{name}: {err}")
                out.append(IdentityReport(name=name, passed=False, checked_through=config.trunc_order))
                continue
            rebuilt = qseries.Series.zero(brute_n)
            for key, alpha in representation.alphas.items():
                exponents = tuple(int(a) for a in key.strip("()").split(","))
                rebuilt = rebuilt + quasimod.expand_monomial(quasimod.phi_monomial(exponents, k), brute_n) * alpha
            rebuilt = rebuilt * qseries.overpartition_series(brute_n) * 2
            out.append(
                _compare(
                    name,
                    [int(c) for c in rebuilt.coeffs],
                    [table.moment(2 * j, n) for n in range(brute_n + 1)],
                    alphas=representation.alphas,
                )
            )
    return out


def quasimod_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Membership certificates for ``delta_q^m(Cbar[k]_{2j}) / Pbar``."""
    N = config.trunc_order  # noqa: N806
    if options.j is not None and options.l is not None:
        cases = [(k, options.j, options.m or 0, options.l) for k in _moduli(options, [1])]
    else:
        cases = [
            (k, j, m, l)
            for k in _moduli(options, range(1, 4))
            for l in (1, 2)  # noqa: E741
            for j in range(1, l + 1)
            for m in range(l - j + 1)
        ]
    out = []
    for k, j, m, l in cases:  # noqa: E741
        name = f"quasimod[k={k},j={j},m={m},l={l}]"
        try:
            certificate = quasimod.certify_theorem(k, j, m, l, N)
        except exc.NoSolutionWithinTruncationError as err:
            logger.warning(f"{name}: inconclusive, {err}")
            out.append(IdentityReport(name=name, passed=False, checked_through=N, first_failure=err.order))
            continue
        target = quasimod.theorem_target(k, j, m, N)
        independent = quasimod.verify_certificate(certificate, target)
        out.append(
            IdentityReport(
                name=name,
                passed=independent and certificate.no_constant_term,
                checked_through=certificate.residual_order,
                detail={"support": {label: str(value) for label, value in certificate.support().items()}},
            )
        )
    return out


def delta_closure_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``delta_q`` maps weight ``<= 2l`` monomials into weight ``<= 2l + 2`` without constant term."""
    N = config.trunc_order  # noqa: N806
    out = []
    for level in _moduli(options, (1, 2)):
        for l in range(0, 3):  # noqa: E741
            name = f"delta-closure[K={level},l={l}]"
            try:
                certificates = quasimod.delta_closure(level, l, N)
            except exc.NoSolutionWithinTruncationError as err:
                out.append(IdentityReport(name=name, passed=False, checked_through=N, first_failure=err.order))
                continue
            out.append(
                IdentityReport(
                    name=name,
                    passed=all(c.no_constant_term for c in certificates),
                    checked_through=N,
                    detail={"monomials": len(certificates)},
                )
            )
    return out


def lifting_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``12 delta_q f - w E2 f`` lies in the modular forms of weight ``w + 2``."""
    N = config.trunc_order  # noqa: N806
    out = [
        _series_report(
            "lifting[1]",
            quasimod.verify_lifting(quasimod.TaggedForm.constant(N)),
            qseries.Series.zero(N),
        )
    ]
    expected = {("E4", 1): {"E6(q)": "-4"}, ("E6", 1): {"E4(q)^2": "-6"}}
    for weight, d in ((4, 1), (6, 1), (4, 2)):
        form = quasimod.TaggedForm.eisenstein(weight, d, N)
        span = quasimod.spanning_set(d, (weight + 2) // 2, include_e2=False, exact_weight=True)
        name = f"lifting[{form.name}]"
        try:
            certificate = quasimod.solve_in_span(
                quasimod.verify_lifting(form), span, N, target_name=name, level=form.level
            )
        except exc.NoSolutionWithinTruncationError as err:
            out.append(IdentityReport(name=name, passed=False, checked_through=N, first_failure=err.order))
            continue
        support = {label: str(value) for label, value in certificate.support().items()}
        want = expected.get((f"E{weight}", d))
        out.append(
            IdentityReport(
                name=name,
                passed=want is None or support == want,
                checked_through=N,
                detail={"support": support},
            )
        )
    return out


# ----------------------------------------------------------------------
# Numeric transformation checks
# ----------------------------------------------------------------------


def _numeric_item(
    name: str,
    checks: list[types.reports.TransformationReport],
    expect_pass: bool = True,
) -> IdentityReport:
    outcomes = [check.passed == expect_pass for check in checks]
    failure = next((i for i, ok in enumerate(outcomes) if not ok), None)
    return IdentityReport(
        name=name,
        passed=failure is None,
        checked_through=len(checks) - 1,
        first_failure=failure,
        detail={"max_defect": max((check.defect for check in checks), default=0.0)},
    )


def e2_anomaly_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """``E2(-1/tau) = tau^2 E2(tau) + 6 tau / (pi i)`` at sampled ``tau``."""
    N = config.trunc_order  # noqa: N806
    rng = np.random.default_rng(config.seed)
    points = [numeric.sample_tau(rng) for _ in range(10)]
    with_term = [numeric.check_e2_anomaly(point, N) for point in points]
    without_term = [numeric.check_e2_anomaly(point, N, include_anomaly=False) for point in points]
    convergence = numeric.convergence_defect(lambda order: numeric.check_e2_anomaly(points[0], order), N)
    return [
        _numeric_item("e2-anomaly", with_term),
        _numeric_item("e2-anomaly[negative-control]", without_term, expect_pass=False),
        IdentityReport(
            name="e2-anomaly[convergence]",
            passed=convergence < numeric.DEFAULT_TOLERANCE,
            checked_through=2 * N,
            detail={"defect_change": convergence},
        ),
    ]


def modularity_suite(config: run_settings.RunConfig, options: SuiteOptions) -> list[IdentityReport]:
    """Weight-``w`` transformation of ``E4``, ``E6`` and level-raised ``E4(q^d)``."""
    N = config.trunc_order  # noqa: N806
    rng = np.random.default_rng(config.seed)
    out = []
    for weight in (4, 6):
        form = quasimod.TaggedForm.eisenstein(weight, 1, N)
        checks = []
        for _ in range(20):
            point = numeric.sample_tau(rng)
            checks.append(numeric.check_modularity(form, numeric.sample_gamma0(rng, 1, point), point))
        out.append(_numeric_item(f"modularity[{form.name}]", checks))
    for d in (2, 3, 4):
        form = quasimod.TaggedForm.eisenstein(4, d, N)
        checks = []
        for _ in range(5):
            point = numeric.sample_tau(rng)
            checks.append(numeric.check_modularity(form, numeric.sample_gamma0(rng, d, point), point))
        out.append(_numeric_item(f"modularity[{form.name}]", checks))
    level_four = quasimod.TaggedForm.eisenstein(4, 4, N)
    explicit_gamma, explicit_tau = numeric.GammaElement(1, 0, 4, 1), numeric.HalfPlanePoint(-0.25 + 0.25j)
    out.append(
        _numeric_item(
            "modularity[E4(q^4),explicit]",
            [numeric.check_modularity(level_four, explicit_gamma, explicit_tau)],
        )
    )
    outside, control_tau = numeric.GammaElement(1, 0, 1, 1), numeric.HalfPlanePoint(0.1 + 1.0j)
    for d in (2, 3, 4):
        form = quasimod.TaggedForm.eisenstein(4, d, N)
        out.append(
            _numeric_item(
                f"modularity[{form.name},negative-control]",
                [numeric.check_modularity(form, outside, control_tau, enforce_level=False)],
                expect_pass=False,
            )
        )
    return out


SUITES: dict[str, SuiteFn] = {
    "oracle": oracle_suite,
    "dyson": dyson_suite,
    "chern": chern_suite,
    "nov": nov_suite,
    "ov": ov_suite,
    "ov-corollary": ov_corollary_suite,
    "inequality": inequality_suite,
    "monotonicity": monotonicity_suite,
    "ramanujan": ramanujan_suite,
    "e2-derivative": e2_derivative_suite,
    "overpartition-derivative": overpartition_derivative_suite,
    "representation": representation_suite,
    "quasimod": quasimod_suite,
    "delta-closure": delta_closure_suite,
    "lifting": lifting_suite,
    "bijection": bijection_suite,
    "e2-anomaly": e2_anomaly_suite,
    "modularity": modularity_suite,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(
    name: str,
    config: run_settings.RunConfig = run_settings.DEFAULT_RUN_CONFIG,
    options: SuiteOptions = DEFAULT_SUITE_OPTIONS,
) -> reports.SuiteReport:
    """Run one suite (or ``"all"``) and collect its items.

    Raises
    ------
    KeyError
        For an unknown suite name.
    """
    selected = list(SUITES.values()) if name == "all" else [SUITES[name]]
    items = [item for suite in selected for item in suite(config, options)]
    report = reports.SuiteReport.from_items(name, items, trunc_order=config.trunc_order, seed=config.seed)
    if report.passed:
        logger.info(f"Suite {name}: {len(items)} checks passed")
    else:
        failed = [item.name for item in report.items if not item.passed]
        logger.warning(f"Suite {name}: {len(failed)} of {len(items)} checks failed: {failed}")
    return report

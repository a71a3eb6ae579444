"""Eisenstein series, quasimodular spanning sets and membership certificates.

Eisenstein series are normalised through Bernoulli numbers so that every
expansion stays rational::

    E_w(q) = 1 - (2w / B_w) Phi_{w-1}(q)

which gives ``E2 = 1 - 24 Phi1``, ``E4 = 1 + 240 Phi3`` and
``E6 = 1 - 504 Phi5``.

Membership of a q-expansion in a space of quasimodular forms is certified
against an explicit spanning set of monomials in ``E2, E4, E6`` evaluated at
``q^d`` for the divisors ``d`` of the level. A certificate is sound; a
failed solve is inconclusive, because the spanning set is not a proven basis.

Example:
    >>> from crankforge import quasimod
    >>> [int(c) for c in quasimod.eisenstein(4, 1, 2).coeffs]
    [1, 240, 2160]
    >>> [m.label for m in quasimod.spanning_set(2, 1)]
    ['1', 'E2(q)', 'E2(q^2)']
"""

import dataclasses
import fractions
import functools
import logging
import math
import typing

import pydantic

from . import combinatorics, cranks, exc, linalg, qseries
from .types import certificates, field_types

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_SAFETY_MARGIN",
    "BernoulliCache",
    "TaggedForm",
    "bernoulli",
    "eisenstein",
    "verify_e2_derivative",
    "ramanujan_derivatives",
    "verify_lifting",
    "spanning_set",
    "expand_monomial",
    "solve_in_span",
    "phi_monomial",
    "find_representation",
    "theorem_target",
    "certify_theorem",
    "verify_certificate",
    "delta_closure",
]

#: Extra coefficient equations required beyond the size of the span.
DEFAULT_SAFETY_MARGIN = 50

#: Surplus of informative rows (powers of ``q^k``) over unknowns demanded by
#: :func:`find_representation`.
REPRESENTATION_MARGIN = 10

#: Weights of the Eisenstein generators used in spanning sets.
GENERATOR_WEIGHTS: typing.Final = (2, 4, 6)

Fraction = fractions.Fraction


class BernoulliCache:
    """Bernoulli numbers ``B_0, B_1, ...`` with ``B_1 = -1/2``.

    Values are extended on demand with
    ``B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j``.

    >>> cache = BernoulliCache()
    >>> cache.get(2), cache.get(3), cache.get(4)
    (Fraction(1, 6), Fraction(0, 1), Fraction(-1, 30))
    """

    def __init__(self) -> None:
        self.values: list[fractions.Fraction] = [Fraction(1)]

    def extend_to(self, n: int) -> None:
        for m in range(len(self.values), n + 1):
            total = sum(math.comb(m + 1, j) * self.values[j] for j in range(m))
            self.values.append(-total / (m + 1))

    def get(self, n: int) -> fractions.Fraction:
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        self.extend_to(n)
        return self.values[n]


_BERNOULLI = BernoulliCache()


@pydantic.validate_call
def bernoulli(n: field_types.NaturalIntT) -> fractions.Fraction:
    """Exact Bernoulli number ``B_n``."""
    return _BERNOULLI.get(n)


@functools.lru_cache(maxsize=None)
def _eisenstein(weight: int, d: int, trunc: int) -> qseries.Series:
    scale = -2 * weight / bernoulli(weight)
    return qseries.phi(weight - 1, d, trunc) * scale + 1


@pydantic.validate_call
def eisenstein(
    weight: field_types.EvenPositiveIntT,
    d: field_types.PositiveIntT,
    trunc: field_types.NaturalIntT,
) -> qseries.Series:
    """The Eisenstein series ``E_weight(q^d)`` through ``q^trunc``.

    Parameters
    ----------
    weight : int
        Even weight ``>= 2``.
    d : int
        Argument ``q^d``.
    trunc : int
        Truncation order.

    Example:
        >>> from crankforge.quasimod import eisenstein
        >>> [int(c) for c in eisenstein(6, 2, 4).coeffs]
        [1, 0, -504, 0, -16632]
    """
    return _eisenstein(weight, d, trunc)


def verify_e2_derivative(trunc: int, e4: typing.Optional[qseries.Series] = None) -> bool:
    """Check ``delta_q(E2) == (E2^2 - E4) / 12`` through ``q^trunc``.

    ``e4`` replaces the expansion of ``E4``; a perturbed series makes the
    check fail.
    """
    e2 = eisenstein(2, 1, trunc)
    e4 = eisenstein(4, 1, trunc) if e4 is None else e4
    return qseries.delta_q(e2) == (e2 * e2 - e4) * Fraction(1, 12)


def ramanujan_derivatives(trunc: int, d: int = 1) -> dict[str, tuple[qseries.Series, qseries.Series]]:
    """Both sides of Ramanujan's derivative identities at ``q^d``.

    Keys ``"E2"``, ``"E4"``, ``"E6"`` map to ``(delta_q(E(q^d)), rhs)`` with

    * ``delta_q E2 = (E2^2 - E4) / 12``
    * ``delta_q E4 = (E2 E4 - E6) / 3``
    * ``delta_q E6 = (E2 E6 - E4^2) / 2``

    each right-hand side evaluated at ``q^d`` and multiplied by ``d``.
    """
    e2, e4, e6 = (eisenstein(w, d, trunc) for w in GENERATOR_WEIGHTS)
    return {
        "E2": (qseries.delta_q(e2), (e2 * e2 - e4) * Fraction(d, 12)),
        "E4": (qseries.delta_q(e4), (e2 * e4 - e6) * Fraction(d, 3)),
        "E6": (qseries.delta_q(e6), (e2 * e6 - e4 * e4) * Fraction(d, 2)),
    }


@dataclasses.dataclass(frozen=True)
class TaggedForm:
    """A q-expansion tagged with its transformation weight and level.

    ``modular`` is false for quasimodular expansions such as ``E2``.
    """

    series: qseries.Series
    weight: int
    level: int = 1
    name: str = ""
    modular: bool = True

    @classmethod
    def eisenstein(cls, weight: int, d: int, trunc: int) -> "TaggedForm":
        argument = "q" if d == 1 else f"q^{d}"
        return cls(
            series=eisenstein(weight, d, trunc),
            weight=weight,
            level=d,
            name=f"E{weight}({argument})",
            modular=weight != 2,
        )

    @classmethod
    def constant(cls, trunc: int) -> "TaggedForm":
        return cls(series=qseries.Series.one(trunc), weight=0, name="1")


def verify_lifting(f: TaggedForm, trunc: typing.Optional[int] = None) -> qseries.Series:
    """``12 delta_q(f) - w E2 f`` for ``f`` of weight ``w``.

    For a modular form of weight ``w`` and level ``N`` the result is a
    modular form of weight ``w + 2`` and level ``N``; callers certify that
    with :func:`solve_in_span`.
    """
    order = f.series.trunc_order if trunc is None else trunc
    series = f.series.truncate(order)
    return qseries.delta_q(series) * 12 - eisenstein(2, 1, order) * series * f.weight


# ----------------------------------------------------------------------
# Spanning sets
# ----------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if not n % d]


def _multisets(
    generators: typing.Sequence[tuple[str, int, int, int]],
    budget: int,
    start: int = 0,
) -> typing.Iterator[tuple[int, ...]]:
    """Non-decreasing index tuples over ``generators`` with total weight ``<= budget``."""
    yield ()
    for index in range(start, len(generators)):
        weight = generators[index][3]
        if weight <= budget:
            for rest in _multisets(generators, budget - weight, index):
                yield (index, *rest)


def _monomial(
    generators: typing.Sequence[tuple[str, int, int, int]],
    indices: tuple[int, ...],
) -> certificates.QMonomial:
    exponents: dict[int, int] = {}
    for index in indices:
        exponents[index] = exponents.get(index, 0) + 1
    return certificates.QMonomial(
        factors=tuple(
            certificates.QFactor(
                kind=generators[index][0],  # type: ignore[arg-type]
                index=generators[index][1],
                d=generators[index][2],
                exponent=power,
            )
            for index, power in exponents.items()
        )
    )


@pydantic.validate_call
def spanning_set(
    K: field_types.PositiveIntT,  # noqa: N803
    l: field_types.NaturalIntT,  # noqa: E741
    include_phi: bool = False,
    include_e2: bool = True,
    exact_weight: bool = False,
) -> list[certificates.QMonomial]:
    """Monomials in ``E2, E4, E6`` at ``q^d`` for ``d | K`` of weight at most ``2l``.

    Parameters
    ----------
    K : int
        Level; generators are evaluated at ``q^d`` for each divisor ``d``.
    l : int
        Half the maximal weight.
    include_phi : bool
        Prepend the single generators ``Phi_{w-1}(q^d)`` for ``w`` in
        ``2, 4, 6`` with ``w <= 2l``. They are affine in ``E_w(q^d)``, so
        the span is unchanged.
    include_e2 : bool
        Allow ``E2`` factors; without them the monomials are modular.
    exact_weight : bool
        Keep only monomials of weight exactly ``2l``.

    Returns
    -------
    list of QMonomial
        Ordered by weight, then by generation order; ``1`` comes first
        among the ``E``-monomials.
    """
    generators = [
        ("E", weight, d, weight)
        for weight in GENERATOR_WEIGHTS
        if weight != 2 or include_e2
        for d in _divisors(K)
    ]
    found = [(indices, sum(generators[i][3] for i in indices)) for indices in _multisets(generators, 2 * l)]
    found.sort(key=lambda item: (item[1], item[0]))
    span = [_monomial(generators, indices) for indices, weight in found if not exact_weight or weight == 2 * l]
    if include_phi:
        phis = [
            certificates.QMonomial(factors=(certificates.QFactor(kind="Phi", index=weight - 1, d=d),))
            for weight in GENERATOR_WEIGHTS
            if weight <= 2 * l and (not exact_weight or weight == 2 * l)
            for d in _divisors(K)
        ]
        span = phis + span
    logger.debug(f"Spanning set for level {K}, weight <= {2 * l}: {len(span)} monomials")
    return span


@functools.lru_cache(maxsize=None)
def _expand_factor(factor: certificates.QFactor, trunc: int) -> qseries.Series:
    if factor.kind == "E":
        base = eisenstein(factor.index, factor.d, trunc)
    else:
        base = qseries.phi(factor.index, factor.d, trunc)
    return base**factor.exponent


@functools.lru_cache(maxsize=None)
def _expand_monomial(monomial: certificates.QMonomial, trunc: int) -> qseries.Series:
    out = qseries.Series.one(trunc)
    for factor in monomial.factors:
        out = out * _expand_factor(factor, trunc)
    return out


def expand_monomial(monomial: certificates.QMonomial, trunc: int) -> qseries.Series:
    """q-expansion of ``monomial`` through ``q^trunc``."""
    return _expand_monomial(monomial, trunc)


# ----------------------------------------------------------------------
# Membership
# ----------------------------------------------------------------------


def solve_in_span(
    target: qseries.Series,
    span: typing.Sequence[certificates.QMonomial],
    trunc: typing.Optional[int] = None,
    *,
    margin: int = DEFAULT_SAFETY_MARGIN,
    require_no_constant_term: bool = False,
    allow_dependent: bool = False,
    target_name: str = "target",
    level: int = 1,
) -> certificates.MembershipCertificate:
    """Find exact coordinates of ``target`` in ``span`` through ``q^trunc``.

    The coefficient equations are solved in increasing power of ``q``; the
    constant-term equation comes first. A span whose columns stay dependent
    through ``q^trunc`` is refused unless ``allow_dependent`` is set, in which
    case the coordinates of free columns are zero and the certificate records
    the rank.

    Parameters
    ----------
    target : Series
        Series to express.
    span : sequence of QMonomial
        Declared spanning monomials.
    trunc : int, optional
        Last coefficient compared; defaults to the target's order.
    margin : int
        Required surplus of equations over unknowns.
    require_no_constant_term : bool
        Demand that the combination (and so the target) has a zero constant term.
    allow_dependent : bool
        Accept a rank-deficient span (spans at level ``K >= 2`` are dependent).
    target_name : str
        Description stored in the certificate.
    level : int
        Level stored in the certificate.

    Raises
    ------
    InsufficientTruncationError
        If ``trunc < len(span) + margin``, or if the rank stays below
        ``len(span)`` and ``allow_dependent`` is not set.
    NoSolutionWithinTruncationError
        With the first power of ``q`` that cannot be matched.

    Example:
        >>> from crankforge import qseries, quasimod
        >>> cert = quasimod.solve_in_span(qseries.phi(1, 1, 60), quasimod.spanning_set(1, 1))
        >>> {label: str(value) for label, value in cert.support().items()}
        {'1': '1/24', 'E2(q)': '-1/24'}
    """
    order = target.trunc_order if trunc is None else trunc
    if order < len(span) + margin:
        raise exc.InsufficientTruncationError(
            f"Truncation q^{order} is below {len(span)} unknowns plus a margin of {margin}."
        )
    target = target.truncate(order)
    if require_no_constant_term and target.coeffs[0]:
        raise exc.NoSolutionWithinTruncationError(0, "The target has a nonzero constant term.")
    columns = [expand_monomial(monomial, order).coeffs for monomial in span]
    rows = ([column[n] for column in columns] for n in range(order + 1))
    solver = linalg.solve(rows, target.coeffs, len(span))
    if solver.rank < len(span) and not allow_dependent:
        raise exc.InsufficientTruncationError(
            f"Rank {solver.rank} of {len(span)} columns through q^{order}; "
            "the span is dependent or the truncation leaves coordinates undetermined."
        )
    coordinates = solver.solution()
    constant = sum((c * column[0] for c, column in zip(coordinates, columns, strict=True)), Fraction(0))
    logger.debug(f"Solved {target_name} in a span of {len(span)} (rank {solver.rank}) through q^{order}")
    return certificates.MembershipCertificate(
        target=target_name,
        level=level,
        max_weight=max((monomial.weight for monomial in span), default=0),
        span=list(span),
        coordinates=coordinates,
        residual_order=order,
        rank=solver.rank,
        no_constant_term=constant == 0,
    )


def verify_certificate(
    certificate: certificates.MembershipCertificate,
    target: qseries.Series,
) -> bool:
    """Re-expand the certified combination and compare with ``target``.

    Independent of the solver: the monomials are expanded afresh and summed
    with the stored coordinates.
    """
    order = certificate.residual_order
    if target.trunc_order < order:
        return False
    combination = qseries.Series.zero(order)
    for monomial, coordinate in zip(certificate.span, certificate.coordinates, strict=True):
        if coordinate:
            combination = combination + _expand_monomial(monomial, order) * coordinate
    if certificate.no_constant_term and combination.coeffs[0]:
        return False
    return combination == target.truncate(order)


def _exponent_tuples(j: int) -> list[tuple[int, ...]]:
    """``(a_1, ..., a_j)`` with ``sum i * a_i == j``, one per partition of ``j``."""
    out = []
    for partition in combinatorics.enumerate_partitions(j):
        exponents = [0] * j
        for part in partition.parts:
            exponents[part - 1] += 1
        out.append(tuple(exponents))
    return out


def phi_monomial(exponents: tuple[int, ...], d: int) -> certificates.QMonomial:
    return certificates.QMonomial(
        factors=tuple(
            certificates.QFactor(kind="Phi", index=2 * i + 1, d=d, exponent=a) for i, a in enumerate(exponents) if a
        )
    )


@pydantic.validate_call
def find_representation(
    k: field_types.PositiveIntT,
    j: field_types.PositiveIntT,
    trunc: field_types.NaturalIntT = qseries.DEFAULT_TRUNC_ORDER,
    *,
    margin: field_types.NaturalIntT = REPRESENTATION_MARGIN,
) -> certificates.Representation:
    """Integer ``alpha`` with ``Cbar[k]_{2j} = 2 Pbar sum alpha * Phi-monomial(q^k)``.

    The monomials are ``Phi1^a1 Phi3^a2 ... Phi_{2j-1}^aj`` at ``q^k`` over
    ``a1 + 2 a2 + ... + j aj = j``.

    Example:
        >>> from crankforge.quasimod import find_representation
        >>> find_representation(1, 2, 40).alphas
        {'(0,1)': 1, '(2,0)': 6}

    Raises
    ------
    InsufficientTruncationError
        If ``trunc // k < len(span) + margin`` or the coefficients are not
        determined through ``q^trunc``.
    NonIntegerCoefficientsError
        If a coefficient is not an integer.
    NoSolutionWithinTruncationError
        If the monomials do not reproduce the moment through ``q^trunc``.
    """
    exponents = _exponent_tuples(j)
    span = [phi_monomial(e, k) for e in exponents]
    if trunc // k < len(span) + margin:
        raise exc.InsufficientTruncationError(
            f"Only {trunc // k} powers of q^{k} through q^{trunc}; "
            f"need {len(span)} unknowns plus a margin of {margin}."
        )
    moment = cranks.moment_series(k, 2 * j, trunc).series
    target = moment * qseries.series_inverse(qseries.overpartition_series(trunc)) * Fraction(1, 2)
    certificate = solve_in_span(target, span, trunc, margin=0, target_name=f"Cbar[{k}]_{2 * j}/(2*Pbar)")
    keys = ["(" + ",".join(str(a) for a in e) + ")" for e in exponents]
    coordinates = dict(zip(keys, certificate.coordinates, strict=True))
    if any(value.denominator != 1 for value in coordinates.values()):
        raise exc.NonIntegerCoefficientsError(coordinates)
    return certificates.Representation(
        k=k,
        j=j,
        trunc_order=trunc,
        alphas={key: int(value) for key, value in coordinates.items()},
    )


def theorem_target(k: int, j: int, m: int, trunc: int) -> qseries.Series:
    """``delta_q^m(Cbar[k]_{2j}) / Pbar`` through ``q^trunc``."""
    series = cranks.moment_series(k, 2 * j, trunc).series
    for _ in range(m):
        series = qseries.delta_q(series)
    return series * qseries.series_inverse(qseries.overpartition_series(trunc))


@pydantic.validate_call
def certify_theorem(
    k: field_types.PositiveIntT,
    j: field_types.PositiveIntT,
    m: field_types.NaturalIntT,
    l: field_types.PositiveIntT,  # noqa: E741
    trunc: field_types.NaturalIntT = qseries.DEFAULT_TRUNC_ORDER,
) -> certificates.MembershipCertificate:
    """Certify ``delta_q^m(Cbar[k]_{2j}) / Pbar`` in weight ``<= 2l`` at level ``lcm(2, k)``.

    The span is :func:`spanning_set` with the ``Phi`` generators first and the
    combination is required to have no constant term.

    Raises
    ------
    PreconditionViolatedError
        If ``j + m > l``.
    NoSolutionWithinTruncationError
        Propagated from :func:`solve_in_span`.
    """
    if j + m > l:
        raise exc.PreconditionViolatedError(f"Need j + m <= l, got j={j}, m={m}, l={l}.", offending=(j, m, l))
    level = math.lcm(2, k)
    span = spanning_set(level, l, include_phi=True)
    target = theorem_target(k, j, m, trunc)
    certificate = solve_in_span(
        target,
        span,
        trunc,
        require_no_constant_term=True,
        allow_dependent=True,
        target_name=f"delta^{m}(Cbar[{k}]_{2 * j})/Pbar",
        level=level,
    )
    logger.info(f"Certified k={k}, j={j}, m={m}, l={l} with {len(certificate.support())} nonzero coordinates")
    return certificate


@pydantic.validate_call
def delta_closure(
    K: field_types.PositiveIntT,  # noqa: N803
    l: field_types.NaturalIntT,  # noqa: E741
    trunc: field_types.NaturalIntT = qseries.DEFAULT_TRUNC_ORDER,
) -> list[certificates.MembershipCertificate]:
    """Certify ``delta_q(M)`` in weight ``<= 2l + 2`` for every monomial ``M`` of weight ``<= 2l``.

    Every certificate also has no constant term, since ``delta_q`` kills
    constants.
    """
    wider = spanning_set(K, l + 1)
    out = []
    for monomial in spanning_set(K, l):
        target = qseries.delta_q(expand_monomial(monomial, trunc))
        out.append(
            solve_in_span(
                target,
                wider,
                trunc,
                require_no_constant_term=True,
                allow_dependent=True,
                target_name=f"delta({monomial.label})",
                level=K,
            )
        )
    return out

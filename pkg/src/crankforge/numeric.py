"""Floating-point evaluation of q-expansions on the upper half-plane.

Exact series cannot express transformation laws such as
``E4(-1/tau) = tau^4 E4(tau)``; this module evaluates truncated expansions at
``q = exp(2 pi i tau)`` and compares both sides numerically.

Defects are relative: ``|lhs - rhs| / max(1, |lhs|, |rhs|)``.

Example:
    >>> import math
    >>> from crankforge import numeric, quasimod
    >>> e2 = quasimod.eisenstein(2, 1, 200)
    >>> value = numeric.eval_series(e2, numeric.HalfPlanePoint(1j))
    >>> abs(value - 3 / math.pi) < 1e-12
    True
"""

import cmath
import dataclasses
import functools
import logging
import math
import re
import typing

import numpy as np

from . import exc, qseries, quasimod, types

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_TOLERANCE",
    "TAIL_TOLERANCE",
    "HalfPlanePoint",
    "GammaElement",
    "eval_series",
    "named_series",
    "check_e2_anomaly",
    "check_modularity",
    "sample_tau",
    "sample_gamma0",
    "convergence_defect",
]

#: Default relative tolerance of transformation checks.
DEFAULT_TOLERANCE = 1e-9

#: Largest admissible estimate of the discarded tail, relative to the coefficient scale.
TAIL_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class HalfPlanePoint:
    """A point ``tau`` with ``Im tau > 0``."""

    tau: complex

    def __post_init__(self) -> None:
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise exc.PreconditionViolatedError(f"tau={tau} is not in the upper half-plane.", offending=tau)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_parts(cls, re_part: float, im_part: float) -> "HalfPlanePoint":
        return cls(complex(re_part, im_part))

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * self.tau)

    def as_tuple(self) -> tuple[float, float]:
        return (self.tau.real, self.tau.imag)


@dataclasses.dataclass(frozen=True)
class GammaElement:
    """An integer matrix ``[[a, b], [c, d]]`` of determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.as_tuple()} is not 1")

    @classmethod
    def translation(cls, shift: int = 1) -> "GammaElement":
        return cls(1, shift, 0, 1)

    @classmethod
    def inversion(cls) -> "GammaElement":
        return cls(0, -1, 1, 0)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def in_gamma0(self, level: int) -> bool:
        return self.c % level == 0

    def check_level(self, level: int) -> None:
        """Raise :exc:`LevelViolationError` unless the matrix lies in ``Gamma0(level)``."""
        if not self.in_gamma0(level):
            raise exc.LevelViolationError(f"c={self.c} is not divisible by the level {level}.")

    def automorphy_factor(self, point: HalfPlanePoint) -> complex:
        """``c tau + d``."""
        return self.c * point.tau + self.d

    def act(self, point: HalfPlanePoint) -> HalfPlanePoint:
        """Mobius action ``(a tau + b) / (c tau + d)``."""
        return HalfPlanePoint((self.a * point.tau + self.b) / self.automorphy_factor(point))


def _tail_bound(series: qseries.Series, point: HalfPlanePoint) -> float:
    abs_q = abs(point.q)
    scale = max(1.0, max(abs(float(c)) for c in series.coeffs))
    return scale * abs_q ** (series.trunc_order + 1) / (1.0 - abs_q)


def eval_series(series: qseries.Series, point: HalfPlanePoint) -> complex:
    """Evaluate ``sum coeffs[n] q^n`` in double precision.

    Raises
    ------
    TailBoundExceededError
        When ``max|coeffs| * |q|^(N+1) / (1 - |q|)`` exceeds :data:`TAIL_TOLERANCE`.
    """
    bound = _tail_bound(series, point)
    if not bound < TAIL_TOLERANCE:
        raise exc.TailBoundExceededError(
            bound,
            f"Tail estimate {bound:.3g} at tau={point.tau} exceeds {TAIL_TOLERANCE:g}; raise Im tau or the order.",
        )
    coeffs = np.array([float(c) for c in reversed(series.coeffs)], dtype=float)
    return complex(np.polyval(coeffs, point.q))


_NAME_RE = re.compile(r"^(?P<base>E(?P<weight>\d+)|Phi(?P<index>\d+)|Pbar|P|euler|geometric)(\(q\^(?P<d>\d+)\))?$")


@functools.lru_cache(maxsize=None)
def named_series(name: str, trunc: int) -> qseries.Series:
    """Series by name: ``E2``, ``E4``, ..., ``Phi1``, ``Phi3``, ..., ``P``, ``Pbar``, ``euler`` or ``geometric``.

    A suffix ``(q^d)`` substitutes ``q^d``, e.g. ``E4(q^2)``.

    >>> from crankforge.numeric import named_series
    >>> [int(c) for c in named_series("Phi1(q^2)", 4).coeffs]
    [0, 0, 1, 0, 3]
    """
    match = _NAME_RE.match(name.strip())
    if match is None:
        raise ValueError(f"unknown series name {name!r}")
    d = int(match["d"] or 1)
    if match["weight"]:
        return quasimod.eisenstein(int(match["weight"]), d, trunc)
    if match["index"]:
        return qseries.phi(int(match["index"]), d, trunc)
    base = {
        "P": qseries.partition_series,
        "Pbar": qseries.overpartition_series,
        "euler": qseries.euler_product,
        "geometric": lambda order: qseries.Series.from_coeffs([1] * (order + 1), order),
    }[match["base"]](trunc)
    return qseries.substitute_power(base, d)


def _defect(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def check_e2_anomaly(
    point: HalfPlanePoint,
    trunc: int = qseries.DEFAULT_TRUNC_ORDER,
    tol: float = DEFAULT_TOLERANCE,
    include_anomaly: bool = True,
) -> types.reports.TransformationReport:
    """Compare ``E2(-1/tau)`` with ``tau^2 E2(tau) + 6 tau / (pi i)``.

    With ``include_anomaly=False`` the non-modular term is dropped, which
    must fail.
    """
    e2 = quasimod.eisenstein(2, 1, trunc)
    image = GammaElement.inversion().act(point)
    lhs = eval_series(e2, image)
    rhs = point.tau**2 * eval_series(e2, point)
    if include_anomaly:
        rhs += 6 * point.tau / (math.pi * 1j)
    defect = _defect(lhs, rhs)
    report = types.reports.TransformationReport(
        check="e2-anomaly" if include_anomaly else "e2-without-anomaly",
        tau=point.as_tuple(),
        gamma=GammaElement.inversion().as_tuple(),
        weight=2,
        level=1,
        defect=defect,
        tolerance=tol,
        passed=defect < tol,
    )
    logger.debug(f"E2 anomaly at tau={point.tau}: defect {defect:.3g}")
    return report


def check_modularity(
    form: quasimod.TaggedForm,
    gamma: GammaElement,
    point: HalfPlanePoint,
    tol: float = DEFAULT_TOLERANCE,
    enforce_level: bool = True,
) -> types.reports.TransformationReport:
    """Compare ``f(gamma tau)`` with ``(c tau + d)^w f(tau)`` for ``f`` of weight ``w``.

    Raises
    ------
    LevelViolationError
        When ``enforce_level`` is set and ``gamma`` is not in ``Gamma0(form.level)``.
    TailBoundExceededError
        When either evaluation point is too close to the real axis.
    """
    if enforce_level:
        gamma.check_level(form.level)
    lhs = eval_series(form.series, gamma.act(point))
    rhs = gamma.automorphy_factor(point) ** form.weight * eval_series(form.series, point)
    defect = _defect(lhs, rhs)
    return types.reports.TransformationReport(
        check=f"modularity:{form.name or 'form'}",
        tau=point.as_tuple(),
        gamma=gamma.as_tuple(),
        weight=form.weight,
        level=form.level,
        defect=defect,
        tolerance=tol,
        passed=defect < tol,
    )


def sample_tau(
    rng: np.random.Generator,
    im_range: tuple[float, float] = (0.8, 1.5),
    re_bound: float = 1.0,
) -> HalfPlanePoint:
    """Uniform ``tau`` with ``|Re tau| <= re_bound`` and ``Im tau`` in ``im_range``."""
    return HalfPlanePoint.from_parts(rng.uniform(-re_bound, re_bound), rng.uniform(*im_range))


def sample_gamma0(
    rng: np.random.Generator,
    level: int,
    point: typing.Optional[HalfPlanePoint] = None,
    bound: int = 10,
    min_image_imag: float = 0.2,
    max_tries: int = 10_000,
) -> GammaElement:
    """Draw an element of ``Gamma0(level)`` with ``|c|, |d| <= bound``.

    ``c`` is a multiple of ``level`` and ``d`` is coprime to it; ``a`` is the
    inverse of ``d`` modulo ``c`` and ``b = (a d - 1) / c``. When ``point`` is
    given, draws are repeated until ``Im(gamma tau) >= min_image_imag``.

    Raises
    ------
    PreconditionViolatedError
        If no admissible element is found within ``max_tries`` draws.
    """
    multiples = [c for c in range(-bound, bound + 1) if c % level == 0]
    for _ in range(max_tries):
        c = int(rng.choice(multiples))
        d = int(rng.integers(-bound, bound + 1))
        if math.gcd(c, d) != 1:
            continue
        if c == 0:
            gamma = GammaElement(d, int(rng.integers(-bound, bound + 1)) * d, 0, d)
        else:
            a = pow(d, -1, abs(c))
            gamma = GammaElement(a, (a * d - 1) // c, c, d)
        if point is None or gamma.act(point).tau.imag >= min_image_imag:
            return gamma
    raise exc.PreconditionViolatedError(f"No Gamma0({level}) element found in {max_tries} draws.", offending=level)


def convergence_defect(
    check: typing.Callable[[int], types.reports.TransformationReport],
    trunc: int,
) -> float:
    """Change of the reported defect when the truncation order is doubled."""
    return abs(check(2 * trunc).defect - check(trunc).defect)

"""
Inverse binomial series and their integral representations.

This module sums series of the form

    sum_k a_k z^k / (k^r W(k) B(k))

where B(k) is C(2k,k), C(3k,k) or C(4k,2k), W(k) a linear weighting such as
3k+1 and a_k a harmonic-number numerator, and exposes the Beta-integral
representations of single summands as an independent per-term oracle.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from .exceptions import DomainError
from .numkit import EvalResult, Method, TailModel, adaptive_quad, collect_partial_sums, levin_accelerate, sum_series
from .specfun import CUBIC_RADIUS, QUARTIC_RADIUS, harmonic
from .utils import get_logger

logger = get_logger(__name__)

BOUNDARY_PARTIAL_SUMS = 200
_EXACT_BINOMIAL_LIMIT = 300


class Family(str, Enum):
    """Binomial coefficient in the denominator."""

    C2 = "C2"
    C3 = "C3"
    C4 = "C4"

    @property
    def radius(self) -> float:
        return _RADII[self]

    def indices(self, k: int) -> Tuple[int, int]:
        """(n, m) with B(k) = C(n, m)."""
        if self is Family.C2:
            return 2 * k, k
        if self is Family.C3:
            return 3 * k, k
        return 4 * k, 2 * k

    def step_ratio(self, k: int) -> float:
        """B(k+1)/B(k) as a product of linear factors."""
        if self is Family.C2:
            return 2.0 * (2 * k + 1) / (k + 1)
        if self is Family.C3:
            return 3.0 * (3 * k + 1) * (3 * k + 2) / ((2 * k + 1) * (2 * k + 2))
        return (4 * k + 1) * (4 * k + 2) * (4 * k + 3) * (4 * k + 4) / ((2 * k + 1) * (2 * k + 2)) ** 2


_RADII = {Family.C2: 4.0, Family.C3: CUBIC_RADIUS, Family.C4: QUARTIC_RADIUS}


class Weighting(str, Enum):
    """Linear factor W(k) dividing each summand."""

    PLAIN = "PLAIN"
    K_PLUS_1 = "K_PLUS_1"
    K_PLUS_2 = "K_PLUS_2"
    THREE_K_PLUS_1 = "THREE_K_PLUS_1"
    THREE_K_PLUS_2 = "THREE_K_PLUS_2"
    TWO_K_MINUS_1 = "TWO_K_MINUS_1"
    FOUR_K_PLUS_1 = "FOUR_K_PLUS_1"
    FOUR_K_PLUS_3 = "FOUR_K_PLUS_3"
    THREE_K_PAIR = "THREE_K_PAIR"

    def factor(self, k: int) -> float:
        """The multiplier 1/W(k); THREE_K_PAIR is 1/(3k+1) + 1/(3k+2)."""
        if self is Weighting.PLAIN:
            return 1.0
        if self is Weighting.THREE_K_PAIR:
            return 1.0 / (3 * k + 1) + 1.0 / (3 * k + 2)
        a, b = _LINEAR[self]
        return 1.0 / (a * k + b)

    @property
    def defined_at_zero(self) -> bool:
        return self is not Weighting.TWO_K_MINUS_1


_LINEAR = {
    Weighting.K_PLUS_1: (1, 1),
    Weighting.K_PLUS_2: (1, 2),
    Weighting.THREE_K_PLUS_1: (3, 1),
    Weighting.THREE_K_PLUS_2: (3, 2),
    Weighting.TWO_K_MINUS_1: (2, -1),
    Weighting.FOUR_K_PLUS_1: (4, 1),
    Weighting.FOUR_K_PLUS_3: (4, 3),
}


class Numerator(str, Enum):
    """Closed catalogue of numerator sequences a_k."""

    ONE = "ONE"
    ONE_OVER_K = "ONE_OVER_K"
    HK = "HK"
    HK_MINUS_H3K = "HK_MINUS_H3K"
    H2K_MINUS_H3K = "H2K_MINUS_H3K"
    HK_MINUS_H2K = "HK_MINUS_H2K"
    HK_MINUS_H3K1 = "HK_MINUS_H3K1"
    HK_MINUS_H2KM2 = "HK_MINUS_H2KM2"
    HK_MINUS_H3KM1 = "HK_MINUS_H3KM1"
    HKM1_MINUS_H3K = "HKM1_MINUS_H3K"
    HKM1_MINUS_H2K = "HKM1_MINUS_H2K"
    HK_MINUS_H2KP2 = "HK_MINUS_H2KP2"
    H2K_MINUS_H4K = "H2K_MINUS_H4K"
    H2KM1_MINUS_H4K = "H2KM1_MINUS_H4K"
    H2K_MINUS_H4K1 = "H2K_MINUS_H4K1"
    H2K_MINUS_H3K1 = "H2K_MINUS_H3K1"
    H2KP2_MINUS_H3K3 = "H2KP2_MINUS_H3K3"
    HK_MINUS_H3K3 = "HK_MINUS_H3K3"
    H2KM2_MINUS_H3KM1 = "H2KM2_MINUS_H3KM1"
    HPROD = "HPROD"

    @property
    def min_k(self) -> int:
        """Smallest k at which the sequence is defined."""
        return _HARMONIC_DIFFERENCES[self][2] if self in _HARMONIC_DIFFERENCES else (1 if self is Numerator.ONE_OVER_K else 0)


# H_{a k + b} - H_{c k + d} as ((a, b), (c, d), smallest valid k)
_HARMONIC_DIFFERENCES: Dict[Numerator, Tuple[Tuple[int, int], Tuple[int, int], int]] = {
    Numerator.HK_MINUS_H3K: ((1, 0), (3, 0), 0),
    Numerator.H2K_MINUS_H3K: ((2, 0), (3, 0), 0),
    Numerator.HK_MINUS_H2K: ((1, 0), (2, 0), 0),
    Numerator.HK_MINUS_H3K1: ((1, 0), (3, 1), 0),
    Numerator.HK_MINUS_H2KM2: ((1, 0), (2, -2), 1),
    Numerator.HK_MINUS_H3KM1: ((1, 0), (3, -1), 1),
    Numerator.HKM1_MINUS_H3K: ((1, -1), (3, 0), 1),
    Numerator.HKM1_MINUS_H2K: ((1, -1), (2, 0), 1),
    Numerator.HK_MINUS_H2KP2: ((1, 0), (2, 2), 0),
    Numerator.H2K_MINUS_H4K: ((2, 0), (4, 0), 0),
    Numerator.H2KM1_MINUS_H4K: ((2, -1), (4, 0), 1),
    Numerator.H2K_MINUS_H4K1: ((2, 0), (4, 1), 0),
    Numerator.H2K_MINUS_H3K1: ((2, 0), (3, 1), 0),
    Numerator.H2KP2_MINUS_H3K3: ((2, 2), (3, 3), 0),
    Numerator.HK_MINUS_H3K3: ((1, 0), (3, 3), 0),
    Numerator.H2KM2_MINUS_H3KM1: ((2, -2), (3, -1), 1),
}


class _HarmonicTape:
    """Harmonic numbers H_m^(r), extended on demand in increasing m."""

    def __init__(self) -> None:
        self._values: Dict[int, list] = {}

    def __call__(self, m: int, order: int = 1) -> float:
        values = self._values.setdefault(order, [0.0])
        while len(values) <= m:
            n = len(values)
            values.append(values[-1] + 1.0 / n**order)
        return values[m]


@dataclass(frozen=True)
class SumSpec:
    """
    One inverse binomial series sum_k a_k z^k / (k^r W(k) B(k)).

    :param family: Binomial coefficient B(k)
    :param r: Power of k in the denominator, r >= -1
    :param numerator: Numerator sequence a_k
    :param z: Series argument
    :param weighting: Linear factor W(k)
    :param powers: Orders r_1..r_M for the HPROD numerator
    :param boundary: Allow |z| equal to the radius of convergence
    """

    family: Family
    r: int
    numerator: Numerator
    z: complex
    weighting: Weighting = Weighting.PLAIN
    powers: Tuple[int, ...] = ()
    boundary: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "numerator", Numerator(self.numerator))
        object.__setattr__(self, "weighting", Weighting(self.weighting))
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "powers", tuple(int(p) for p in self.powers))
        if self.r < -1:
            raise ValueError(f"r must be >= -1, got {self.r}")
        if self.numerator is Numerator.HPROD:
            if not self.powers or any(p < 1 for p in self.powers):
                raise ValueError(f"HPROD needs positive orders, got {self.powers}")
        elif self.powers:
            raise ValueError("powers only apply to the HPROD numerator")

    def numerator_value(self, h: Callable[..., float], k: int) -> float:
        """a_k, reading harmonic numbers from ``h(m, order)``."""
        numerator = self.numerator
        if numerator is Numerator.ONE:
            return 1.0
        if numerator is Numerator.ONE_OVER_K:
            return 1.0 / k
        if numerator is Numerator.HK:
            return h(k)
        if numerator is Numerator.HPROD:
            return math.prod(h(k, p) for p in self.powers)
        (a, b), (c, d), _ = _HARMONIC_DIFFERENCES[numerator]
        return h(a * k + b) - h(c * k + d)

    @property
    def start_k(self) -> int:
        """
        First summation index.

        The series starts at 0 when r <= 0 and both the weighting and the
        numerator are defined there, unless that k = 0 term vanishes.
        """
        if self.r > 0 or not self.weighting.defined_at_zero or self.numerator.min_k > 0:
            return 1
        if self.r < 0 or self.numerator_value(_HarmonicTape(), 0) == 0:
            return 1
        return 0


class BinomTerm(NamedTuple):
    k: int
    value: complex


def binomial(family: Family, k: int) -> float:
    """B(k) exactly up to k = 300 and from log-gamma beyond."""
    n, m = family.indices(k)
    if k <= _EXACT_BINOMIAL_LIMIT:
        return float(math.comb(n, m))
    return math.exp(gammaln(n + 1) - gammaln(m + 1) - gammaln(n - m + 1))


def inverse_binomial(family: Family, k: int) -> float:
    """1/B(k) without overflow."""
    n, m = family.indices(k)
    if k <= _EXACT_BINOMIAL_LIMIT:
        return 1 / math.comb(n, m)
    return math.exp(gammaln(m + 1) + gammaln(n - m + 1) - gammaln(n + 1))


def iter_terms(spec: SumSpec) -> Iterator[BinomTerm]:
    """
    Yield the summands of ``spec`` from its first index onwards.

    z^k/B(k) is carried as a running product of z/(B(k+1)/B(k)), which
    stays representable even when z^k and B(k) separately do not.
    """
    tape = _HarmonicTape()
    k = spec.start_k
    carried = spec.z**k * inverse_binomial(spec.family, k)
    while True:
        value = spec.numerator_value(tape, k) * spec.weighting.factor(k) * float(k) ** (-spec.r) * carried
        yield BinomTerm(k, value)
        carried *= spec.z / spec.family.step_ratio(k)
        k += 1


class _TermStream:
    """Adapter from `iter_terms` to the k -> term callables of numkit."""

    def __init__(self, spec: SumSpec) -> None:
        self._terms = iter_terms(spec)

    def __call__(self, k: int) -> complex:
        term = next(self._terms)
        if term.k != k:
            raise ValueError(f"Terms must be requested in order; expected k={term.k}, got k={k}")
        return term.value


def _on_boundary(spec: SumSpec) -> bool:
    radius = spec.family.radius
    modulus = abs(spec.z)
    if modulus > radius * (1.0 + 1e-14):
        raise DomainError(f"|z| = {modulus} exceeds the {spec.family.value} radius {radius}")
    if modulus >= radius * (1.0 - 1e-14):
        if not spec.boundary:
            raise DomainError(f"|z| = {modulus} is on the {spec.family.value} radius; set the boundary flag")
        return True
    return False


def sum_family(spec: SumSpec, tol: float = 1e-15, max_terms: Optional[int] = None) -> EvalResult:
    """
    Sum an inverse binomial series.

    Inside the disk of convergence the terms are summed directly with a
    geometric tail of ratio |z|/R. On the circle |z| = R (boundary flag set)
    the partial sums are extrapolated with the Levin u-transform and the
    result carries the note ``BOUNDARY_SLOW``.

    :param spec: The series
    :param tol: Tail tolerance for direct summation
    :param max_terms: Term budget (defaults to ``INVBINOM_MAX_TERMS``)
    :return: EvalResult with method DIRECT or LEVIN
    :raises DomainError: If |z| exceeds the radius, or reaches it without the boundary flag
    """
    boundary = _on_boundary(spec)
    start = spec.start_k
    if spec.z == 0:
        value = next(iter_terms(spec)).value if start == 0 else 0.0
        return EvalResult(value, 0.0, 1, Method.DIRECT)

    term = _TermStream(spec)
    if boundary:
        logger.warning(
            "Series %s at |z| = %g is on its radius of convergence; extrapolating %d partial sums",
            spec.family.value,
            abs(spec.z),
            BOUNDARY_PARTIAL_SUMS,
        )
        sums = collect_partial_sums(term, start, BOUNDARY_PARTIAL_SUMS)
        return levin_accelerate(sums).with_notes("BOUNDARY_SLOW")

    ratio = abs(spec.z) / spec.family.radius
    return sum_series(term, start, TailModel.geometric(ratio), tol=tol, max_terms=max_terms)


def hprod_gf(powers: Sequence[int], r: int, z: complex, tol: float = 1e-15) -> EvalResult:
    """
    Generating function sum_{k>=1} prod_j H_k^(r_j) z^k / k^r.

    :param powers: Orders r_1..r_M (empty means the plain polylogarithm)
    :param r: Power of k, r >= 1
    :param z: Argument with |z| < 1
    :param tol: Tail tolerance
    :return: EvalResult with method DIRECT
    :raises DomainError: If |z| >= 1
    """
    z = complex(z)
    if r < 1 or any(p < 1 for p in powers):
        raise ValueError(f"hprod_gf needs r >= 1 and positive orders, got r={r}, powers={list(powers)}")
    if abs(z) >= 1:
        raise DomainError(f"hprod_gf needs |z| < 1, got {z}")
    if z == 0:
        return EvalResult(0.0, 0.0, 1, Method.DIRECT)

    tape = _HarmonicTape()
    orders = tuple(powers)

    def term(k: int) -> complex:
        return math.prod(tape(k, p) for p in orders) * z**k / k**r

    return sum_series(term, 1, TailModel.geometric(abs(z)), tol=tol)


# ==========================================================================
# Integral representations
# ==========================================================================


class IntegralRep(str, Enum):
    """Beta-integral representations of single summands."""

    C3_3K1 = "C3_3K1"
    C3_3K1_LOG_T = "C3_3K1_LOG_T"
    C3_3K1_LOG_1MT = "C3_3K1_LOG_1MT"
    C4_4K1 = "C4_4K1"
    C4_4K1_LOG_T = "C4_4K1_LOG_T"
    C4_4K1_LOG_1MT = "C4_4K1_LOG_1MT"
    C3_K = "C3_K"
    C3_K_LOG_T = "C3_K_LOG_T"
    C3_K_LOG_1MT = "C3_K_LOG_1MT"
    C4_K = "C4_K"
    C4_K_LOG_T = "C4_K_LOG_T"
    C4_K_LOG_1MT = "C4_K_LOG_1MT"
    C3_PAIR = "C3_PAIR"
    C3_PAIR_LOG_T = "C3_PAIR_LOG_T"
    C3_PAIR_LOG_1MT = "C3_PAIR_LOG_1MT"
    C3_2KM1 = "C3_2KM1"
    C3_2KM1_LOG_T = "C3_2KM1_LOG_T"
    C3_2KM1_LOG_1MT = "C3_2KM1_LOG_1MT"
    C2_K = "C2_K"


@dataclass(frozen=True)
class _RepSpec:
    min_k: int
    # (t, k) -> integrand without the log factor
    base: Callable[[np.ndarray, int], np.ndarray]
    log: Optional[str]
    # k -> left-hand side
    closed: Callable[[int], float]


def _c3(k: int) -> int:
    return math.comb(3 * k, k)


def _c4(k: int) -> int:
    return math.comb(4 * k, 2 * k)


def _pair(k: int) -> float:
    return (1 / (3 * k + 1) + 1 / (3 * k + 2)) / _c3(k)


_REPS: Dict[IntegralRep, _RepSpec] = {
    IntegralRep.C3_3K1: _RepSpec(
        0, lambda t, k: (t * t * (1 - t)) ** k, None, lambda k: 1 / ((3 * k + 1) * _c3(k))
    ),
    IntegralRep.C3_3K1_LOG_T: _RepSpec(
        0,
        lambda t, k: (t * t * (1 - t)) ** k,
        "t",
        lambda k: (harmonic(2 * k) - harmonic(3 * k + 1)) / ((3 * k + 1) * _c3(k)),
    ),
    IntegralRep.C3_3K1_LOG_1MT: _RepSpec(
        0,
        lambda t, k: (t * t * (1 - t)) ** k,
        "1-t",
        lambda k: (harmonic(k) - harmonic(3 * k + 1)) / ((3 * k + 1) * _c3(k)),
    ),
    IntegralRep.C4_4K1: _RepSpec(
        0, lambda t, k: (t * (1 - t)) ** (2 * k), None, lambda k: 1 / ((4 * k + 1) * _c4(k))
    ),
    IntegralRep.C4_4K1_LOG_T: _RepSpec(
        0,
        lambda t, k: (t * (1 - t)) ** (2 * k),
        "t",
        lambda k: (harmonic(2 * k) - harmonic(4 * k + 1)) / ((4 * k + 1) * _c4(k)),
    ),
    IntegralRep.C4_4K1_LOG_1MT: _RepSpec(
        0,
        lambda t, k: (t * (1 - t)) ** (2 * k),
        "1-t",
        lambda k: (harmonic(2 * k) - harmonic(4 * k + 1)) / ((4 * k + 1) * _c4(k)),
    ),
    IntegralRep.C3_K: _RepSpec(
        1, lambda t, k: t ** (2 * k) * (1 - t) ** (k - 1), None, lambda k: 1 / (k * _c3(k))
    ),
    IntegralRep.C3_K_LOG_T: _RepSpec(
        1,
        lambda t, k: t ** (2 * k) * (1 - t) ** (k - 1),
        "t",
        lambda k: (harmonic(2 * k) - harmonic(3 * k)) / (k * _c3(k)),
    ),
    IntegralRep.C3_K_LOG_1MT: _RepSpec(
        1,
        lambda t, k: t ** (2 * k) * (1 - t) ** (k - 1),
        "1-t",
        lambda k: (harmonic(k - 1) - harmonic(3 * k)) / (k * _c3(k)),
    ),
    IntegralRep.C4_K: _RepSpec(
        1, lambda t, k: 2 * t ** (2 * k) * (1 - t) ** (2 * k - 1), None, lambda k: 1 / (k * _c4(k))
    ),
    IntegralRep.C4_K_LOG_T: _RepSpec(
        1,
        lambda t, k: 2 * t ** (2 * k) * (1 - t) ** (2 * k - 1),
        "t",
        lambda k: (harmonic(2 * k) - harmonic(4 * k)) / (k * _c4(k)),
    ),
    IntegralRep.C4_K_LOG_1MT: _RepSpec(
        1,
        lambda t, k: 2 * t ** (2 * k) * (1 - t) ** (2 * k - 1),
        "1-t",
        lambda k: (harmonic(2 * k - 1) - harmonic(4 * k)) / (k * _c4(k)),
    ),
    IntegralRep.C3_PAIR: _RepSpec(0, lambda t, k: 4.5 * t ** (2 * k + 2) * (1 - t) ** k, None, _pair),
    IntegralRep.C3_PAIR_LOG_T: _RepSpec(
        0,
        lambda t, k: 4.5 * t ** (2 * k + 2) * (1 - t) ** k,
        "t",
        lambda k: _pair(k) * (harmonic(2 * k + 2) - harmonic(3 * k + 3)),
    ),
    IntegralRep.C3_PAIR_LOG_1MT: _RepSpec(
        0,
        lambda t, k: 4.5 * t ** (2 * k + 2) * (1 - t) ** k,
        "1-t",
        lambda k: _pair(k) * (harmonic(k) - harmonic(3 * k + 3)),
    ),
    IntegralRep.C3_2KM1: _RepSpec(
        1, lambda t, k: 2 / 3 * t ** (2 * k - 2) * (1 - t) ** k, None, lambda k: 1 / ((2 * k - 1) * _c3(k))
    ),
    IntegralRep.C3_2KM1_LOG_T: _RepSpec(
        1,
        lambda t, k: 2 / 3 * t ** (2 * k - 2) * (1 - t) ** k,
        "t",
        lambda k: (harmonic(2 * k - 2) - harmonic(3 * k - 1)) / ((2 * k - 1) * _c3(k)),
    ),
    IntegralRep.C3_2KM1_LOG_1MT: _RepSpec(
        1,
        lambda t, k: 2 / 3 * t ** (2 * k - 2) * (1 - t) ** k,
        "1-t",
        lambda k: (harmonic(k) - harmonic(3 * k - 1)) / ((2 * k - 1) * _c3(k)),
    ),
    IntegralRep.C2_K: _RepSpec(
        1, lambda t, k: 0.5 * (t * (1 - t)) ** (k - 1), None, lambda k: 1 / (k * math.comb(2 * k, k))
    ),
}

_SINGULAR = {None: "none", "t": "left", "1-t": "right"}


def _with_log(base: Callable[[np.ndarray], np.ndarray], log: Optional[str]) -> Callable[[np.ndarray], np.ndarray]:
    if log is None:
        return base
    if log == "t":
        return lambda t: base(t) * np.log(t)
    return lambda t: base(t) * np.log1p(-t)


def rep_min_k(rep: IntegralRep) -> int:
    """Smallest k for which ``rep`` holds."""
    return _REPS[IntegralRep(rep)].min_k


def term_closed(rep: IntegralRep, k: int) -> float:
    """Left-hand side of ``rep`` at ``k`` from harmonic numbers and exact binomials."""
    spec = _REPS[IntegralRep(rep)]
    if k < spec.min_k:
        raise ValueError(f"{rep} holds for k >= {spec.min_k}, got k={k}")
    return spec.closed(k)


def term_oracle_integral(rep: IntegralRep, k: int, tol: float = 1e-13) -> float:
    """
    Quadrature value of the integral in ``rep`` at ``k``.

    :param rep: Representation tag
    :param k: Index within the representation's range
    :param tol: Quadrature tolerance
    :return: The integral over [0, 1]
    :raises ValueError: If k is below the representation's range
    """
    spec = _REPS[IntegralRep(rep)]
    if k < spec.min_k:
        raise ValueError(f"{rep} holds for k >= {spec.min_k}, got k={k}")
    f = _with_log(lambda t: spec.base(t, k), spec.log)
    return adaptive_quad(f, 0.0, 1.0, tol=tol, singular=_SINGULAR[spec.log]).value.real


# Generating functions: the representations summed under the integral sign.
# key -> (kernel(t, z), {numerator: log factor}); each kernel already
# contains the sum over k of z^k times the representation's base.
def _cubic(t: np.ndarray) -> np.ndarray:
    return t * t * (1 - t)


def _quartic(t: np.ndarray) -> np.ndarray:
    return (t * (1 - t)) ** 2


_GENERATING: Dict[Tuple[Family, Weighting, int], Tuple[Callable[[np.ndarray, complex], np.ndarray], Dict[Numerator, Optional[str]]]] = {
    (Family.C3, Weighting.THREE_K_PLUS_1, 0): (
        lambda t, z: 1 / (1 - z * _cubic(t)),
        {Numerator.ONE: None, Numerator.H2K_MINUS_H3K1: "t", Numerator.HK_MINUS_H3K1: "1-t"},
    ),
    (Family.C3, Weighting.PLAIN, 1): (
        lambda t, z: z * t * t / (1 - z * _cubic(t)),
        {Numerator.ONE: None, Numerator.H2K_MINUS_H3K: "t", Numerator.HKM1_MINUS_H3K: "1-t"},
    ),
    (Family.C3, Weighting.TWO_K_MINUS_1, 0): (
        lambda t, z: 2 / 3 * z * (1 - t) / (1 - z * _cubic(t)),
        {Numerator.ONE: None, Numerator.H2KM2_MINUS_H3KM1: "t", Numerator.HK_MINUS_H3KM1: "1-t"},
    ),
    (Family.C3, Weighting.THREE_K_PAIR, 0): (
        lambda t, z: 4.5 * t * t / (1 - z * _cubic(t)),
        {Numerator.ONE: None, Numerator.H2KP2_MINUS_H3K3: "t", Numerator.HK_MINUS_H3K3: "1-t"},
    ),
    (Family.C4, Weighting.FOUR_K_PLUS_1, 0): (
        lambda t, z: 1 / (1 - z * _quartic(t)),
        {Numerator.ONE: None, Numerator.H2K_MINUS_H4K1: "t"},
    ),
    (Family.C4, Weighting.PLAIN, 1): (
        lambda t, z: 2 * z * t * t * (1 - t) / (1 - z * _quartic(t)),
        {Numerator.ONE: None, Numerator.H2K_MINUS_H4K: "t", Numerator.H2KM1_MINUS_H4K: "1-t"},
    ),
    (Family.C2, Weighting.PLAIN, 1): (
        lambda t, z: 0.5 * z / (1 - z * t * (1 - t)),
        {Numerator.ONE: None},
    ),
}


def sum_family_with_integral(spec: SumSpec, tol: float = 1e-13) -> EvalResult:
    """
    Evaluate a series through its integral representation.

    The per-term representations are summed under the integral sign, which
    gives a single smooth integral over [0, 1]. Only the combinations of
    family, weighting, r and numerator with such a representation are
    accepted; this is an oracle for `sum_family`, including the (2k-1)
    series whose closed forms are not in this package.

    :param spec: The series, strictly inside its disk of convergence
    :param tol: Quadrature tolerance
    :return: EvalResult with method QUAD
    :raises DomainError: On or beyond the radius of convergence
    :raises ValueError: If the series has no integral representation here
    """
    entry = _GENERATING.get((spec.family, spec.weighting, spec.r))
    if entry is None or spec.numerator not in entry[1]:
        raise ValueError(
            f"No integral representation for {spec.family.value}/{spec.weighting.value}/r={spec.r}/{spec.numerator.value}"
        )
    if abs(spec.z) >= spec.family.radius:
        raise DomainError(f"The integral representation needs |z| < {spec.family.radius}, got {spec.z}")
    kernel, logs = entry
    log = logs[spec.numerator]
    z = spec.z
    f = _with_log(lambda t: kernel(t, z), log)
    return adaptive_quad(f, 0.0, 1.0, tol=tol, singular=_SINGULAR[log])

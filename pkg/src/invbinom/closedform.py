"""
Closed-form right-hand sides of the inverse binomial identities.

Every identity is registered once in `REGISTRY` with its parameter domain,
its closed form, the series (or integral) it evaluates, a default
verification grid and a default tolerance. `closed_eval` evaluates the
closed form; `lhs_eval` evaluates the other side with the numerical
machinery of `invbinom.binom`, `invbinom.gpl` and `invbinom.numkit`.

Parameters are passed as complex numbers throughout. Identities stated
for a real parameter reject a non-zero imaginary part with `DomainError`.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .binom import Family, Numerator, SumSpec, Weighting, hprod_gf, sum_family
from .exceptions import DomainError
from .gpl import gpl, mpl
from .numkit import EvalResult, Method, adaptive_quad
from .specfun import (
    arccot,
    artanh,
    c_const,
    li_n,
    principal_sqrt,
    q_of,
    r_frak,
    tau_pm,
    xi,
    z3_of,
    z4_of,
    zeta,
)
from .utils import get_logger

logger = get_logger(__name__)

BOUNDARY_TOL = 1e-6
_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_LOG2 = math.log(2.0)
_LOG3 = math.log(3.0)
_PHI = (1.0 + math.sqrt(5.0)) / 2.0


class IdentityId(str, Enum):
    THM11 = "THM11"
    THM12 = "THM12"
    THM13A = "THM13A"
    THM13B = "THM13B"
    THM14 = "THM14"
    T15_HK_H2K_3K1 = "T15_HK_H2K_3K1"
    T15_HK_H3K_3K1 = "T15_HK_H3K_3K1"
    T15_HK_H2K_3K2 = "T15_HK_H2K_3K2"
    T15_HK_H2K_2K1 = "T15_HK_H2K_2K1"
    T15_HK_H3K_2K1 = "T15_HK_H3K_2K1"
    T16_HK_4K1 = "T16_HK_4K1"
    T16_HK_4K3 = "T16_HK_4K3"
    R_1K = "R_1K"
    R_H2K_H3K = "R_H2K_H3K"
    R_HK1_H2K = "R_HK1_H2K"
    EQ_KP1_HALF = "EQ_KP1_HALF"
    EQ_KP1_83 = "EQ_KP1_83"
    EQ_4K_KP1 = "EQ_4K_KP1"
    CK2K_KP2 = "CK2K_KP2"
    ARCSIN_SQ = "ARCSIN_SQ"
    X2K_K2_C4 = "X2K_K2_C4"
    LOGLOG_TAU = "LOGLOG_TAU"
    NEWMAN_SUM = "NEWMAN_SUM"
    LANDEN = "LANDEN"
    KFREE_C3 = "KFREE_C3"
    KFREE_LOG_INTEGRAL = "KFREE_LOG_INTEGRAL"
    PAIR_HK_H2K2 = "PAIR_HK_H2K2"
    HK_OVER_K_GF = "HK_OVER_K_GF"
    TBL_S30 = "TBL_S30"
    TBL_T15_HALF_3K1 = "TBL_T15_HALF_3K1"
    TBL_T15_HALF_2K1 = "TBL_T15_HALF_2K1"
    COR_K2 = "COR_K2"
    COR_K3 = "COR_K3"
    COR_K4 = "COR_K4"
    COR_K5 = "COR_K5"
    L12_HK_4K1 = "L12_HK_4K1"
    L12_HK_4K3 = "L12_HK_4K3"


@dataclass(frozen=True)
class IdentitySpec:
    """
    One registered identity.

    :param identity: Catalogue tag
    :param description: The left-hand side in words
    :param domain_text: Parameter domain in words
    :param domain: Predicate on the (complex) parameter
    :param rhs: Closed form
    :param lhs: Numerical evaluation of the other side
    :param grid: Default verification grid
    :param tol: Default tolerance
    :param series: The series as a SumSpec, when the left-hand side is one
    """

    identity: IdentityId
    description: str
    domain_text: str
    domain: Callable[[complex], bool]
    rhs: Callable[[complex], complex]
    lhs: Callable[[complex], EvalResult]
    grid: Tuple[complex, ...]
    tol: float
    series: Optional[Callable[[complex], SumSpec]] = None


# ==========================================================================
# Domains
# ==========================================================================


def _is_real(p: complex) -> bool:
    return complex(p).imag == 0.0


def _cubic_x(p: complex) -> bool:
    return _is_real(p) and -3.0 < p.real < c_const() and p.real != 0.0


def _cubic_x_with_zero(p: complex) -> bool:
    return _is_real(p) and -3.0 < p.real < c_const()


def _quartic_x(p: complex) -> bool:
    x = complex(p).real
    return _is_real(p) and (x > (1.0 + _SQRT2) / 2.0 or x < (1.0 - _SQRT2) / 2.0)


def _big_x(p: complex) -> bool:
    return _is_real(p) and p.real > 0.25


def _fixed(value: complex) -> Callable[[complex], bool]:
    return lambda p: abs(complex(p) - value) <= 1e-14 * max(1.0, abs(value))


# ==========================================================================
# Shared pieces of the C(3k,k) closed forms
# ==========================================================================


@dataclass(frozen=True)
class _Cubic:
    x: float
    q: float
    log: float
    ratio: float
    root: float
    tau_gap: complex

    @classmethod
    def at(cls, x: float, with_tau: bool = False) -> "_Cubic":
        gap = 0j
        if with_tau:
            plus, minus = tau_pm(x)
            gap = li_n(2, -1.0 / plus) - li_n(2, -1.0 / minus)
        return cls(
            x=x,
            q=q_of(x),
            log=math.log(1.0 - x),
            ratio=math.sqrt((1.0 - x) / (3.0 + x)),
            root=math.sqrt((1.0 - x) * (3.0 + x)),
            tau_gap=gap,
        )


def _thm11(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    return (
        2 * (1 - x) * q**2 / x**3
        - (x**2 + 15 * x - 18) / (x**2 * (2 * x - 3)) * c.ratio * q
        - 3 * (1 - x) * L**2 / (2 * x**3)
        + 3 * (x - 6) * (x - 1) * L / (2 * x**2 * (2 * x - 3))
    )


def _thm12(p: complex) -> complex:
    c = _Cubic.at(p.real)
    return 2.0 / 3.0 * c.q**2 - c.log**2 / 2.0


def _t15_hk_h2k_3k1(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    d = 2 * x * (3 - 2 * x)
    return -(1 - x) / d * (q**2 + 3 * L**2 / 4) - (3 - x) / d * c.ratio * q * L


def _t15_hk_h3k_3k1(p: complex) -> complex:
    c = _Cubic.at(p.real, with_tau=True)
    x, q, L = c.x, c.q, c.log
    d = 2 * x * (3 - 2 * x)
    li2 = li_n(2, x).real
    return (
        -(1 - x) / d * (3 * li2 + 2 * q**2 / 3 + L**2)
        + 1j * (3 - x) / d * c.ratio * c.tau_gap
        - (3 - x) / d * c.ratio * q * L
    )


def _t15_hk_h2k_3k2(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    e = 2 * x**2 * (3 - 2 * x)
    return (
        -(3 - x) * (1 - x) / e * q**2
        + 3 * (3 + x) / x**2 * c.ratio * q
        + (9 - 6 * x - x**2) / e * c.ratio * q * L
        + 9 * (1 - x) / (2 * x**2) * L
        - 3 * (3 - x) * (1 - x) / (4 * e) * L**2
    )


def _t15_hk_h2k_2k1(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    f = 3 * (3 - 2 * x)
    return -(1 - x) * x / f * (q**2 + 3 * L**2 / 4) + x * (3 - x**2) / (c.root * f) * q * L


def _t15_hk_h3k_2k1(p: complex) -> complex:
    c = _Cubic.at(p.real, with_tau=True)
    x, q, L = c.x, c.q, c.log
    f = 3 * (3 - 2 * x)
    li2 = li_n(2, x).real
    return (
        -(1 - x) * x / f * (3 * li2 + 2 * q**2 / 3 + L**2)
        - 1j * x * (3 - x**2) / (c.root * f) * c.tau_gap
        + x * (3 - x**2) / (c.root * f) * q * L
    )


def _r_1k(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x = c.x
    return 2 * x / (3 - 2 * x) * c.ratio * c.q + x * c.log / (3 - 2 * x)


def _r_h2k_h3k(p: complex) -> complex:
    c = _Cubic.at(p.real, with_tau=True)
    x = c.x
    return (
        x * li_n(2, x).real / (3 - 2 * x)
        + 1j * x / (3 - 2 * x) * c.ratio * c.tau_gap
        + (1 - x) / (3 - 2 * x) * (c.q**2 / 3 - c.log**2 / 4)
    )


def _r_hk1_h2k(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    return -(1 - x) * q**2 / (3 - 2 * x) - x / (3 - 2 * x) * c.ratio * q * L + (3 - x) * L**2 / (4 * (3 - 2 * x))


def _kfree_c3(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x = c.x
    cube = (2 * x - 3) ** 3
    return (
        27 * (1 - x) / ((x + 3) * (2 * x - 3) ** 2)
        + 3 * x * (x - 1) / cube * c.log
        + 2 * x * (x - 1) * (x**2 - 12 * x + 9) * c.q / ((x + 3) * cube * c.root)
    )


def _kfree_integral(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    return (1 - x) * q**2 / x**3 - c.root * q / x**2 - 3 * (1 - x) * L**2 / (4 * x**3) - 3 * (1 - x) * L / (2 * x**2)


def _kfree_integral_lhs(p: complex) -> EvalResult:
    z = z3_of(p.real)

    def f(t: np.ndarray) -> np.ndarray:
        w = t * t * (1 - t)
        return np.log1p(-z * w) / w

    result = adaptive_quad(f, 0.0, 1.0, tol=1e-13)
    return EvalResult(result.value / z, result.abs_err / abs(z), result.work, result.method)


def _pair_hk_h2k2(p: complex) -> complex:
    c = _Cubic.at(p.real)
    x, q, L = c.x, c.q, c.log
    g = 3 - 2 * x
    return (
        -9 * (1 - x) * L**2 / (4 * x**3 * g)
        + 9 * (1 - x) ** 2 / (8 * x**3 * g) * (4 * q**2 - L**2)
        + 9 * (1 - x) / (2 * x**2 * g) * c.ratio * q * L
    )


def _newman_lhs(p: complex) -> EvalResult:
    x = p.real
    plus, minus = tau_pm(x)
    value = li_n(2, x) + li_n(2, -1.0 / plus) + li_n(2, -1.0 / minus)
    return EvalResult(value, 1e-15 * max(1.0, abs(value)), 3, Method.CLOSED)


def _newman_rhs(p: complex) -> complex:
    x = p.real
    plus, minus = tau_pm(x)
    return -(math.log(1 - x) ** 2 + cmath.log(1 + 1 / plus) ** 2 + cmath.log(1 + 1 / minus) ** 2) / 6


# ==========================================================================
# C(4k,2k) and C(2k,k) closed forms
# ==========================================================================


def _x_angles(big_x: float) -> Tuple[float, float]:
    """(arccot sqrt(4X-1), artanh(1/sqrt(4X+1))) for X > 1/4."""
    return arccot(math.sqrt(4 * big_x - 1)), math.atanh(1 / math.sqrt(4 * big_x + 1))


def _thm13a(p: complex) -> complex:
    big_x = p.real
    a, b = _x_angles(big_x)
    return (
        4 * big_x * (12 * big_x - 1) * a / math.sqrt(4 * big_x - 1)
        - 24 * big_x**2 * a**2
        - 4 * big_x * (12 * big_x + 1) * b / math.sqrt(4 * big_x + 1)
        + 24 * big_x**2 * b**2
    )


def _quartic_angles(x: float) -> Tuple[complex, complex, complex, complex]:
    s1 = principal_sqrt(x)
    s2 = principal_sqrt(1 - x)
    return s1, s2, artanh(1 / s1), artanh(1 / s2)


def _thm13b(p: complex) -> complex:
    x = p.real
    s1, s2, a, b = _quartic_angles(x)
    return (
        2 * (1 - x) * (6 * x - 1) / (1 - 2 * x) * s1 * a
        + 2 * x * (6 * x - 5) / (1 - 2 * x) * s2 * b
        + 3 * x * (1 - x) * (a**2 + b**2)
    )


def _thm14(p: complex) -> complex:
    _, _, a, b = _quartic_angles(p.real)
    return -2 * a**2 - 2 * b**2


def _x2k_k2_c4(p: complex) -> complex:
    big_x = p.real
    a, _ = _x_angles(big_x)
    s = math.sqrt(4 * big_x + 1)
    return 4 * a**2 - math.log((s + 1) / (s - 1)) ** 2


def _ck2k_kp2(p: complex) -> complex:
    big_x = p.real
    a, _ = _x_angles(big_x)
    return 4 * big_x * (12 * big_x - 1) * a / math.sqrt(4 * big_x - 1) - 24 * big_x**2 * a**2 - 6 * big_x


def _arcsin_sq(p: complex) -> complex:
    return 2 * math.asin(p.real / 2) ** 2


def _t16_words(x: float) -> Dict[Tuple[int, int, int, int], complex]:
    letters = {(l, m): xi(l, m, x) for l in (0, 1) for m in (0, 1)}
    return {
        (l, m, l2, m2): gpl((letters[(l, m)], letters[(l2, m2)]), 1.0)
        for (l, m) in letters
        for (l2, m2) in letters
    }


def _t16_common(x: float, words: Dict[Tuple[int, int, int, int], complex]) -> complex:
    s1, s2 = principal_sqrt(x), principal_sqrt(1 - x)
    return sum(
        s1 * s2 * ((-1) ** l * s2 - (-1) ** m * s1) * g / (4 * (2 * x - 1)) for (l, m, _, _), g in words.items()
    )


def _t16_4k1(p: complex) -> complex:
    x = p.real
    return -_t16_common(x, _t16_words(x))


def _t16_4k3(p: complex) -> complex:
    x = p.real
    words = _t16_words(x)
    s1, s2 = principal_sqrt(x), principal_sqrt(1 - x)
    cubed = 2 * (s1 * s2) ** 3
    extra = sum(
        cubed * g / ((-1) ** l * s2 + (-1) ** m * s1 - 2 * s1 * s2 - (-1) ** (l + m))
        for (l, m, _, _), g in words.items()
    )
    return extra + _t16_common(x, words)


# ==========================================================================
# Fixed-argument evaluations
# ==========================================================================


def _eq_kp1_half(_: complex) -> complex:
    return 3 * _LOG2**2 - math.pi**2 / 4 + (8 * math.pi - 21 * _LOG2) / 5


def _eq_kp1_83(_: complex) -> complex:
    return (9 * _LOG3**2 - 3 * math.pi**2) / 16 + 11 * _SQRT3 * math.pi / 14 - 9 * _LOG3 / 7


def _eq_4k_kp1(_: complex) -> complex:
    ell = math.log((_SQRT3 + 1) / (_SQRT3 - 1))
    return (20 * math.pi - 3 * math.pi**2) / 8 - 7 / _SQRT3 * ell + 1.5 * ell**2


def _catalan_from_gpl() -> float:
    return mpl((2,), (1j,)).imag


def _tbl_t15_half_3k1(_: complex) -> complex:
    g = _catalan_from_gpl()
    return (_LOG2**2 - 5 * math.pi**2 / 24) / 5 - 4 * g / 5


def _tbl_t15_half_2k1(_: complex) -> complex:
    g = _catalan_from_gpl()
    return 2 * (_LOG2**2 - 5 * math.pi**2 / 24) / 15 + 2 * g / 15


def _cor_k2(_: complex) -> complex:
    return math.pi**2 / 24 - _LOG2**2 / 2


def _cor_k3(_: complex) -> complex:
    lam, pi = _LOG2, math.pi
    z3 = li_n(3, 1).real
    return -33 * z3 / 16 + pi * _catalan_from_gpl() + lam**3 / 6 - pi**2 * lam / 24


def _cor_k4(_: complex) -> complex:
    lam, pi = _LOG2, math.pi
    z3 = li_n(3, 1).real
    g = _catalan_from_gpl()
    li31 = mpl((3, 1), (-1, 1)).real
    im21 = mpl((2, 1), (1, 1j)).imag
    return (
        -21 * li31 / 4
        - pi * im21
        + 33 * z3 * lam / 16
        - pi * g * lam / 2
        - lam**4 / 24
        + pi**2 * lam**2 / 48
        + pi**4 / 60
    )


def _cor_k5(_: complex) -> complex:
    lam, pi = _LOG2, math.pi
    z3 = li_n(3, 1).real
    z5 = li_n(5, 1).real
    g = _catalan_from_gpl()
    li31 = mpl((3, 1), (-1, 1)).real
    li311 = mpl((3, 1, 1), (-1, 1, 1)).real
    im21 = mpl((2, 1), (1, 1j)).imag
    im211 = mpl((2, 1, 1), (1, 1, 1j)).imag
    im4 = li_n(4, 1j).imag
    return (
        51 * li311 / 4
        - 1107 * z5 / 128
        + 21 * li31 * lam / 4
        + 4 * pi * im211 / 3
        + 13 * pi * im4 / 3
        + pi * lam * im21 / 3
        - 33 * lam**2 * z3 / 32
        - 191 * pi**2 * z3 / 192
        + pi * g * lam**2 / 6
        + 2 * pi**3 * g / 9
        + lam**5 / 120
        - pi**2 * lam**3 / 144
        - pi**4 * lam / 60
    )


def _level12_parts() -> Tuple[float, float, float]:
    rho = cmath.exp(1j * math.pi / 3)
    omega = cmath.exp(2j * math.pi / 3)
    combo = (4 * mpl((1, 1), (rho, 1j / rho)) - mpl((1, 1), (omega, 1j / rho))).real
    return combo, math.log(2 + _SQRT3), _catalan_from_gpl()


def _l12_4k1(_: complex) -> complex:
    combo, lt, g = _level12_parts()
    lam, pi = _LOG2, math.pi
    return (
        combo / _SQRT3
        + 4 * g / 3
        - lam * lt / _SQRT3
        + lt**2 / (8 * _SQRT3)
        - _LOG3 * lt / (4 * _SQRT3)
        - pi * lam / 2
        + 29 * pi**2 / (96 * _SQRT3)
    )


def _l12_4k3(_: complex) -> complex:
    combo, lt, g = _level12_parts()
    lam, pi = _LOG2, math.pi
    return (
        -5 * combo / _SQRT3
        + 4 * g
        + 5 * lam * lt / _SQRT3
        - 5 * lt**2 / (8 * _SQRT3)
        + 5 * _LOG3 * lt / (4 * _SQRT3)
        - 3 * pi * lam / 2
        - 145 * pi**2 / (96 * _SQRT3)
    )


# S_{3,0}(1/k; r_nu) at tabulated nu; nu = 0 is the boundary 27/4.
S30_TABLE: Dict[Fraction, float] = {
    Fraction(0): 2 * math.pi**2 / 3 - 2 * _LOG2**2,
    Fraction(1, 5): 8 * math.pi**2 / 75 - 2 * math.log(_PHI) ** 2,
    Fraction(2, 5): 2 * math.pi**2 / 75 - 2 * math.log(_PHI) ** 2,
    Fraction(1, 6): math.pi**2 / 6 - _LOG3**2 / 2,
    Fraction(1, 9): 8 * math.pi**2 / 27 - 2 * math.log(2 * math.cos(math.pi / 9)) ** 2,
    Fraction(2, 9): 2 * math.pi**2 / 27 - 2 * math.log(2 * math.cos(2 * math.pi / 9)) ** 2,
    Fraction(4, 9): 2 * math.pi**2 / 27 - 2 * math.log(2 * math.cos(4 * math.pi / 9)) ** 2,
    Fraction(1, 10): 49 * math.pi**2 / 150 - (2 * math.log(_PHI) + math.log(5)) ** 2 / 8,
    Fraction(3, 10): math.pi**2 / 150 - (2 * math.log(_PHI) - math.log(5)) ** 2 / 8,
    Fraction(1, 12): 3 * math.pi**2 / 8 - math.log(2 + _SQRT3) ** 2 / 2,
    Fraction(5, 12): math.pi**2 / 24 - math.log(2 + _SQRT3) ** 2 / 2,
}


def _nu(p: complex) -> Fraction:
    return Fraction(complex(p).real).limit_denominator(100)


def _in_s30_table(p: complex) -> bool:
    return _is_real(p) and _nu(p) in S30_TABLE and abs(float(_nu(p)) - p.real) < 1e-12


# ==========================================================================
# Registry
# ==========================================================================

CUBIC_GRID: Tuple[complex, ...] = (-2.9, -2.5, -2.0, -1.5, -1.0, -0.5, 0.3, 0.5, 0.8)
T15_GRID: Tuple[complex, ...] = (-2.0, -1.0, -0.5, 0.5)
BIG_X_GRID: Tuple[complex, ...] = (0.3, 0.5, 1.0, 2.0, 5.0)
QUARTIC_GRID: Tuple[complex, ...] = (1.3, 1.5, 2.0, 3.0, -0.3, -0.5, -1.0, -2.0)
T16_GRID: Tuple[complex, ...] = (1.5, 2.0, 3.0, -0.5, -1.0, -2.0)


def _series_lhs(series: Callable[[complex], SumSpec]) -> Callable[[complex], EvalResult]:
    return lambda p: sum_family(series(p))


def _cubic_series(numerator: Numerator, r: int, weighting: Weighting) -> Callable[[complex], SumSpec]:
    return lambda p: SumSpec(Family.C3, r, numerator, z3_of(p.real), weighting)


def _quartic_series(numerator: Numerator, r: int, weighting: Weighting) -> Callable[[complex], SumSpec]:
    return lambda p: SumSpec(Family.C4, r, numerator, z4_of(p.real).real, weighting)


def _fixed_series(family: Family, numerator: Numerator, r: int, weighting: Weighting) -> Callable[[complex], SumSpec]:
    return lambda p: SumSpec(family, r, numerator, p, weighting)


def _entry(
    identity: IdentityId,
    description: str,
    domain_text: str,
    domain: Callable[[complex], bool],
    rhs: Callable[[complex], complex],
    grid: Tuple[complex, ...],
    tol: float,
    series: Optional[Callable[[complex], SumSpec]] = None,
    lhs: Optional[Callable[[complex], EvalResult]] = None,
) -> IdentitySpec:
    if lhs is None:
        if series is None:
            raise ValueError(f"{identity} needs a series or an explicit left-hand side")
        lhs = _series_lhs(series)
    return IdentitySpec(identity, description, domain_text, domain, rhs, lhs, tuple(complex(g) for g in grid), tol, series)


def _loglog_lhs(p: complex) -> EvalResult:
    tau = complex(p)
    return adaptive_quad(lambda t: (np.log1p(-t) - np.log(t)) / (t + tau), 0.0, 1.0, tol=1e-13, singular="both")


def _loglog_rhs(p: complex) -> complex:
    tau = complex(p)
    a, b = cmath.log(1 + tau), cmath.log(tau)
    return a**2 / 2 + b**2 / 2 - b * a


def _landen_lhs(p: complex) -> EvalResult:
    z = complex(p)
    value = li_n(2, z) + li_n(2, z / (z - 1))
    return EvalResult(value, 1e-15 * max(1.0, abs(value)), 2, Method.CLOSED)


def _hk_over_k_lhs(p: complex) -> EvalResult:
    return hprod_gf((1,), 1, complex(p))


def _hk_over_k_rhs(p: complex) -> complex:
    z = complex(p)
    return li_n(2, z) + cmath.log(1 - z) ** 2 / 2


def _s30_series(p: complex) -> SumSpec:
    nu = _nu(p)
    return SumSpec(Family.C3, 1, Numerator.ONE_OVER_K, r_frak(nu), boundary=nu == 0)


_C3 = Family.C3
_C4 = Family.C4
_C2 = Family.C2
_W = Weighting
_N = Numerator
_CUBIC_TEXT = "real x in (-3, c) without 0"
_QUARTIC_TEXT = "real x > (1+sqrt2)/2 or x < (1-sqrt2)/2"
_BIG_X_TEXT = "real X > 1/4"

_ENTRIES = [
    _entry(
        IdentityId.THM11,
        "sum_{k>=0} z3^k / ((k+1) C(3k,k)), z3 = x^3/(x-1)",
        _CUBIC_TEXT,
        _cubic_x,
        _thm11,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.ONE, 0, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.THM12,
        "sum_{k>=1} z3^k / (k^2 C(3k,k))",
        "real x in (-3, c)",
        _cubic_x_with_zero,
        _thm12,
        CUBIC_GRID,
        1e-11,
        series=_cubic_series(_N.ONE_OVER_K, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.THM13A,
        "sum_{k>=0} 1 / ((k+1) X^{2k} C(4k,2k))",
        _BIG_X_TEXT,
        _big_x,
        _thm13a,
        BIG_X_GRID,
        1e-10,
        series=lambda p: SumSpec(_C4, 0, _N.ONE, 1 / p.real**2, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.THM13B,
        "sum_{k>=0} z4^k / ((k+1) C(4k,2k)), z4 = 4/(x(1-x))",
        _QUARTIC_TEXT,
        _quartic_x,
        _thm13b,
        QUARTIC_GRID,
        1e-10,
        series=_quartic_series(_N.ONE, 0, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.THM14,
        "sum_{k>=1} z4^k / (k^2 C(4k,2k))",
        _QUARTIC_TEXT,
        _quartic_x,
        _thm14,
        QUARTIC_GRID,
        1e-10,
        series=_quartic_series(_N.ONE_OVER_K, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.T15_HK_H2K_3K1,
        "sum_{k>=0} (H_k - H_{2k}) z3^k / ((3k+1) C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _t15_hk_h2k_3k1,
        T15_GRID,
        1e-9,
        series=_cubic_series(_N.HK_MINUS_H2K, 0, _W.THREE_K_PLUS_1),
    ),
    _entry(
        IdentityId.T15_HK_H3K_3K1,
        "sum_{k>=0} (H_k - H_{3k+1}) z3^k / ((3k+1) C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _t15_hk_h3k_3k1,
        T15_GRID,
        1e-9,
        series=_cubic_series(_N.HK_MINUS_H3K1, 0, _W.THREE_K_PLUS_1),
    ),
    _entry(
        IdentityId.T15_HK_H2K_3K2,
        "sum_{k>=0} (H_k - H_{2k}) z3^k / ((3k+2) C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _t15_hk_h2k_3k2,
        T15_GRID,
        1e-9,
        series=_cubic_series(_N.HK_MINUS_H2K, 0, _W.THREE_K_PLUS_2),
    ),
    _entry(
        IdentityId.T15_HK_H2K_2K1,
        "sum_{k>=1} (H_k - H_{2k-2}) z3^k / ((2k-1) C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _t15_hk_h2k_2k1,
        T15_GRID,
        1e-9,
        series=_cubic_series(_N.HK_MINUS_H2KM2, 0, _W.TWO_K_MINUS_1),
    ),
    _entry(
        IdentityId.T15_HK_H3K_2K1,
        "sum_{k>=1} (H_k - H_{3k-1}) z3^k / ((2k-1) C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _t15_hk_h3k_2k1,
        T15_GRID,
        1e-9,
        series=_cubic_series(_N.HK_MINUS_H3KM1, 0, _W.TWO_K_MINUS_1),
    ),
    _entry(
        IdentityId.T16_HK_4K1,
        "sum_{k>=1} H_k z4^k / ((4k+1) C(4k,2k)) as 16 weight-2 GPLs",
        _QUARTIC_TEXT,
        _quartic_x,
        _t16_4k1,
        T16_GRID,
        1e-8,
        series=_quartic_series(_N.HK, 0, _W.FOUR_K_PLUS_1),
    ),
    _entry(
        IdentityId.T16_HK_4K3,
        "sum_{k>=1} H_k z4^k / ((4k+3) C(4k,2k)) as 32 weight-2 GPLs",
        _QUARTIC_TEXT,
        _quartic_x,
        _t16_4k3,
        T16_GRID,
        1e-8,
        series=_quartic_series(_N.HK, 0, _W.FOUR_K_PLUS_3),
    ),
    _entry(
        IdentityId.R_1K,
        "sum_{k>=1} z3^k / (k C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _r_1k,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.ONE, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.R_H2K_H3K,
        "sum_{k>=1} (H_{2k} - H_{3k}) z3^k / (k C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _r_h2k_h3k,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.H2K_MINUS_H3K, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.R_HK1_H2K,
        "sum_{k>=1} (H_{k-1} - H_{2k}) z3^k / (k C(3k,k))",
        _CUBIC_TEXT,
        _cubic_x,
        _r_hk1_h2k,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.HKM1_MINUS_H2K, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.EQ_KP1_HALF,
        "sum_{k>=0} 1 / ((k+1) 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _eq_kp1_half,
        (0.5,),
        1e-11,
        series=_fixed_series(_C3, _N.ONE, 0, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.EQ_KP1_83,
        "sum_{k>=0} 8^k / ((k+1) 3^k C(3k,k))",
        "z = 8/3",
        _fixed(8 / 3),
        _eq_kp1_83,
        (8 / 3,),
        1e-11,
        series=_fixed_series(_C3, _N.ONE, 0, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.EQ_4K_KP1,
        "sum_{k>=0} 4^k / ((k+1) C(4k,2k))",
        "z = 4",
        _fixed(4.0),
        _eq_4k_kp1,
        (4.0,),
        1e-11,
        series=_fixed_series(_C4, _N.ONE, 0, _W.K_PLUS_1),
    ),
    _entry(
        IdentityId.CK2K_KP2,
        "sum_{k>=0} X^{-k} / ((k+2) C(2k,k))",
        _BIG_X_TEXT,
        _big_x,
        _ck2k_kp2,
        BIG_X_GRID,
        1e-10,
        series=lambda p: SumSpec(_C2, 0, _N.ONE, 1 / p.real, _W.K_PLUS_2),
    ),
    _entry(
        IdentityId.ARCSIN_SQ,
        "sum_{k>=1} w^{2k} / (k^2 C(2k,k))",
        "real w with |w| <= 2",
        lambda p: _is_real(p) and abs(p.real) <= 2.0,
        _arcsin_sq,
        (0.5, 1.0, 1.5, 1.9),
        1e-10,
        series=lambda p: SumSpec(_C2, 2, _N.ONE, p.real**2, boundary=abs(p.real) == 2.0),
    ),
    _entry(
        IdentityId.X2K_K2_C4,
        "sum_{k>=1} 1 / (k^2 X^{2k} C(4k,2k))",
        _BIG_X_TEXT,
        _big_x,
        _x2k_k2_c4,
        BIG_X_GRID,
        1e-10,
        series=lambda p: SumSpec(_C4, 1, _N.ONE_OVER_K, 1 / p.real**2),
    ),
    _entry(
        IdentityId.LOGLOG_TAU,
        "int_0^1 log((1-t)/t) / (t + tau) dt",
        "tau off the real interval (-inf, 0]",
        lambda p: not (_is_real(p) and p.real <= 0.0),
        _loglog_rhs,
        (0.5, 1.0, 2.0, 3.0, 1 + 1j, 0.25 - 2j),
        1e-10,
        lhs=_loglog_lhs,
    ),
    _entry(
        IdentityId.NEWMAN_SUM,
        "Li2(x) + Li2(-1/tau+) + Li2(-1/tau-)",
        _CUBIC_TEXT,
        _cubic_x,
        _newman_rhs,
        CUBIC_GRID,
        1e-11,
        lhs=_newman_lhs,
    ),
    _entry(
        IdentityId.LANDEN,
        "Li2(z) + Li2(z/(z-1))",
        "z off the real ray [1, inf)",
        lambda p: not (_is_real(p) and p.real >= 1.0),
        lambda p: -cmath.log(1 - complex(p)) ** 2 / 2,
        (0.3, -0.5, -3.0, 0.5 + 0.5j, 2 - 1j, 1j),
        1e-11,
        lhs=_landen_lhs,
    ),
    _entry(
        IdentityId.KFREE_C3,
        "sum_{k>=0} z3^k / C(3k,k)",
        "real x in (-3, c)",
        _cubic_x_with_zero,
        _kfree_c3,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.ONE, 0, _W.PLAIN),
    ),
    _entry(
        IdentityId.KFREE_LOG_INTEGRAL,
        "(1/z3) int_0^1 log(1 - z3 t^2 (1-t)) / (t^2 (1-t)) dt",
        _CUBIC_TEXT,
        _cubic_x,
        _kfree_integral,
        CUBIC_GRID,
        1e-10,
        lhs=_kfree_integral_lhs,
    ),
    _entry(
        IdentityId.PAIR_HK_H2K2,
        "sum_{k>=0} (1/(3k+1) + 1/(3k+2)) (H_k - H_{2k+2}) z3^k / C(3k,k)",
        _CUBIC_TEXT,
        _cubic_x,
        _pair_hk_h2k2,
        CUBIC_GRID,
        1e-10,
        series=_cubic_series(_N.HK_MINUS_H2KP2, 0, _W.THREE_K_PAIR),
    ),
    _entry(
        IdentityId.HK_OVER_K_GF,
        "sum_{k>=1} H_k z^k / k",
        "complex |z| < 1",
        lambda p: abs(complex(p)) < 1.0,
        _hk_over_k_rhs,
        (0.5, -0.5, 0.3 + 0.4j, -0.9),
        1e-11,
        lhs=_hk_over_k_lhs,
    ),
    _entry(
        IdentityId.TBL_S30,
        "sum_{k>=1} r_nu^k / (k^2 C(3k,k)) at tabulated nu",
        "nu in {0, 1/5, 2/5, 1/6, 1/9, 2/9, 4/9, 1/10, 3/10, 1/12, 5/12}",
        _in_s30_table,
        lambda p: S30_TABLE[_nu(p)],
        tuple(float(nu) for nu in S30_TABLE if nu != 0),
        1e-10,
        series=_s30_series,
    ),
    _entry(
        IdentityId.TBL_T15_HALF_3K1,
        "sum_{k>=0} (H_k - H_{3k+1}) / ((3k+1) 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _tbl_t15_half_3k1,
        (0.5,),
        1e-10,
        series=_fixed_series(_C3, _N.HK_MINUS_H3K1, 0, _W.THREE_K_PLUS_1),
    ),
    _entry(
        IdentityId.TBL_T15_HALF_2K1,
        "sum_{k>=1} (H_k - H_{3k-1}) / ((2k-1) 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _tbl_t15_half_2k1,
        (0.5,),
        1e-10,
        series=_fixed_series(_C3, _N.HK_MINUS_H3KM1, 0, _W.TWO_K_MINUS_1),
    ),
    _entry(
        IdentityId.COR_K2,
        "sum_{k>=1} 1 / (k^2 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _cor_k2,
        (0.5,),
        1e-11,
        series=_fixed_series(_C3, _N.ONE_OVER_K, 1, _W.PLAIN),
    ),
    _entry(
        IdentityId.COR_K3,
        "sum_{k>=1} 1 / (k^3 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _cor_k3,
        (0.5,),
        1e-11,
        series=_fixed_series(_C3, _N.ONE_OVER_K, 2, _W.PLAIN),
    ),
    _entry(
        IdentityId.COR_K4,
        "sum_{k>=1} 1 / (k^4 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _cor_k4,
        (0.5,),
        1e-8,
        series=_fixed_series(_C3, _N.ONE_OVER_K, 3, _W.PLAIN),
    ),
    _entry(
        IdentityId.COR_K5,
        "sum_{k>=1} 1 / (k^5 2^k C(3k,k))",
        "z = 1/2",
        _fixed(0.5),
        _cor_k5,
        (0.5,),
        1e-7,
        series=_fixed_series(_C3, _N.ONE_OVER_K, 4, _W.PLAIN),
    ),
    _entry(
        IdentityId.L12_HK_4K1,
        "sum_{k>=1} H_k 4^k / ((4k+1) C(4k,2k))",
        "z = 4",
        _fixed(4.0),
        _l12_4k1,
        (4.0,),
        1e-8,
        series=_fixed_series(_C4, _N.HK, 0, _W.FOUR_K_PLUS_1),
    ),
    _entry(
        IdentityId.L12_HK_4K3,
        "sum_{k>=1} H_k 4^k / ((4k+3) C(4k,2k))",
        "z = 4",
        _fixed(4.0),
        _l12_4k3,
        (4.0,),
        1e-8,
        series=_fixed_series(_C4, _N.HK, 0, _W.FOUR_K_PLUS_3),
    ),
]

REGISTRY: Dict[IdentityId, IdentitySpec] = {entry.identity: entry for entry in _ENTRIES}


def get_identity(identity) -> IdentitySpec:
    """
    Look up a registered identity by tag or name.

    :param identity: IdentityId or its name (case-insensitive)
    :return: The registry entry
    :raises DomainError: For an unknown name
    """
    try:
        key = identity if isinstance(identity, IdentityId) else IdentityId(str(identity).upper())
    except ValueError as e:
        raise DomainError(f"Unknown identity {identity!r}") from e
    return REGISTRY[key]


def _checked(spec: IdentitySpec, param: complex) -> complex:
    p = complex(param)
    if not spec.domain(p):
        raise DomainError(f"{spec.identity.value} needs {spec.domain_text}, got {param}")
    return p


def closed_eval(identity, param: complex) -> complex:
    """
    Evaluate the closed form of ``identity`` at ``param``.

    :param identity: IdentityId or its name
    :param param: Parameter (x, X, tau, z or nu depending on the identity)
    :return: The closed-form value
    :raises DomainError: Outside the identity's domain
    """
    spec = get_identity(identity)
    return complex(spec.rhs(_checked(spec, param)))


def lhs_eval(identity, param: complex) -> EvalResult:
    """Evaluate the series, integral or functional side of ``identity`` numerically."""
    spec = get_identity(identity)
    return spec.lhs(_checked(spec, param))


def series_spec(identity, param: complex) -> Optional[SumSpec]:
    """The series behind ``identity`` at ``param``, or None for non-series identities."""
    spec = get_identity(identity)
    if spec.series is None:
        return None
    return spec.series(_checked(spec, param))


def tolerance(identity, param: complex) -> float:
    """Default tolerance, loosened to `BOUNDARY_TOL` for series on their radius of convergence."""
    spec = get_identity(identity)
    series = series_spec(identity, param)
    if series is not None and series.boundary and abs(series.z) >= series.family.radius * (1 - 1e-14):
        return max(spec.tol, BOUNDARY_TOL)
    return spec.tol


def deriv_relation_check(n: int, x: float, h: float = 1e-5) -> float:
    """
    Check x(1-x)/(3-2x) d/dx sum z3^k/(k^2 C(3k,k)) = sum z3^k/(k C(3k,k)).

    The derivative is a central difference with step ``h``.

    :param n: Order of the relation (only 1 is supported)
    :param x: Parameter in (-3, c) without 0
    :param h: Finite-difference step
    :return: Absolute discrepancy
    :raises DomainError: If x or x +- h leaves the domain
    """
    if n != 1:
        raise ValueError(f"Only the first-order relation is supported, got n={n}")
    if not (_cubic_x(complex(x - h)) and _cubic_x(complex(x + h)) and x != 0):
        raise DomainError(f"deriv_relation_check needs x +- h in (-3, c) without 0, got x={x}, h={h}")

    def squared(at: float) -> complex:
        return sum_family(SumSpec(_C3, 1, _N.ONE_OVER_K, z3_of(at))).value

    derivative = (squared(x + h) - squared(x - h)) / (2 * h)
    lhs = x * (1 - x) / (3 - 2 * x) * derivative
    rhs = sum_family(SumSpec(_C3, 1, _N.ONE, z3_of(x))).value
    discrepancy = abs(lhs - rhs)
    logger.debug("deriv_relation_check x=%g h=%g -> %.3e", x, h, discrepancy)
    return discrepancy


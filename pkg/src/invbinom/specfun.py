"""
Scalar special functions used by the inverse binomial closed forms.

This module contains harmonic numbers, the constant c bounding the cubic
parametrisation, the angle function q(x), the pole pairs tau(x) and the
quartic letters xi(x), the trigonometric arguments r_nu, the maps from a
series argument back to its parameter x, and classical polylogarithms of
order 1 to 5 with principal-branch conventions.
"""

import cmath
import math
from fractions import Fraction
from typing import Tuple, Union

import numpy as np
from scipy import special

from .exceptions import BranchCutError, DomainError
from .numkit import solve_bracketed
from .utils import get_logger

logger = get_logger(__name__)

Number = Union[int, float, complex]
Rational = Union[int, float, Fraction]

CUBIC_RADIUS = 27.0 / 4.0
QUARTIC_RADIUS = 16.0


# ==========================================================================
# Elementary helpers
# ==========================================================================


def principal_sqrt(z: Number) -> complex:
    """
    Principal square root with arg in (-pi, pi].

    Negative reals map onto the positive imaginary axis regardless of the
    sign of a zero imaginary part, so sqrt(-1) is always i.

    :param z: Input value
    :return: sqrt(|z|) e^{i arg(z)/2}
    """
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        return complex(0.0, math.sqrt(-z.real))
    return cmath.sqrt(z)


def artanh(w: Number) -> complex:
    """Inverse hyperbolic tangent via (log(1+w) - log(1-w))/2 with principal logs."""
    w = complex(w)
    return 0.5 * (cmath.log(1.0 + w) - cmath.log(1.0 - w))


def arccot(w: float) -> float:
    """Inverse cotangent for w > 0."""
    return math.atan(1.0 / w)


def harmonic(m: int, r: int = 1) -> float:
    """
    Generalised harmonic number H_m^(r) = sum_{k=1}^m k^{-r}.

    Summed in increasing k.

    :param m: Upper index, m >= 0
    :param r: Order, r >= 1
    :return: The harmonic number
    """
    if m < 0 or r < 1:
        raise ValueError(f"harmonic needs m >= 0 and r >= 1, got m={m}, r={r}")
    total = 0.0
    for k in range(1, m + 1):
        total += 1.0 / k**r
    return total


def c_const() -> float:
    """
    The constant c = (3/2)[(1+sqrt2)^{1/3} - (1+sqrt2)^{-1/3}] = 0.8941...

    It is the parameter value for which x^3/(x-1) = -27/4.
    """
    a = (1.0 + math.sqrt(2.0)) ** (1.0 / 3.0)
    return 1.5 * (a - 1.0 / a)


def catalan() -> float:
    """Catalan's constant."""
    return 0.915965594177219015054603514932384110774


def zeta(n: int) -> float:
    """Riemann zeta at an integer n >= 2."""
    if n < 2:
        raise DomainError(f"zeta({n}) is not finite")
    return float(special.zeta(n))


# ==========================================================================
# Parametrisations
# ==========================================================================


def z3_of(x: float) -> float:
    """Series argument x^3/(x-1) of the C(3k,k) family."""
    return x**3 / (x - 1.0)


def z4_of(x: Number) -> complex:
    """Series argument 4/(x(1-x)) of the C(4k,2k) family."""
    x = complex(x)
    return 4.0 / (x * (1.0 - x))


def q_of(x: float) -> float:
    """
    The angle q(x) on (-3, 1).

    Equals arctan((x/(x+2)) sqrt((3+x)/(1-x))) on (-2, 1), -pi/2 at x = -2 and
    that arctan minus pi on (-3, -2); evaluated here as one atan2, which is
    continuous across x = -2.

    :param x: Parameter in (-3, 1)
    :return: q(x)
    :raises DomainError: Outside (-3, 1)
    """
    if not -3.0 < x < 1.0:
        raise DomainError(f"q(x) needs -3 < x < 1, got {x}")
    root = math.sqrt((1.0 - x) * (3.0 + x))
    return math.atan2(x * root, (1.0 - x) * (2.0 + x))


def tau_pm(x: float) -> Tuple[complex, complex]:
    """
    The conjugate pair tau^{+-}(x) = (1 - x +- i sqrt((1-x)(3+x)))/(2x).

    :param x: Parameter in [-3, 1], x != 0
    :return: (tau_plus, tau_minus)
    :raises DomainError: At x = 0 or outside [-3, 1]
    """
    if x == 0:
        raise DomainError("tau(x) has a pole at x = 0")
    disc = (1.0 - x) * (3.0 + x)
    if disc < 0:
        raise DomainError(f"tau(x) needs (1-x)(3+x) >= 0, got x={x}")
    root = math.sqrt(disc)
    plus = complex(1.0 - x, root) / (2.0 * x)
    minus = complex(1.0 - x, -root) / (2.0 * x)
    return plus, minus


def xi(l: int, m: int, x: Number) -> complex:
    """
    Quartic letter xi_{l,m}(x) = (1 + (-1)^l sqrt(x) + (-1)^m sqrt(1-x))/2.

    :param l: 0 or 1
    :param m: 0 or 1
    :param x: Parameter, x not in {0, 1}
    :return: The letter
    """
    if l not in (0, 1) or m not in (0, 1):
        raise ValueError(f"xi indices must be 0 or 1, got ({l}, {m})")
    x = complex(x)
    if x == 0 or x == 1:
        raise DomainError("xi(x) needs x != 0, 1")
    s1 = principal_sqrt(x)
    s2 = principal_sqrt(1.0 - x)
    return 0.5 * (1.0 + (-1) ** l * s1 + (-1) ** m * s2)


def r_frak(nu: Rational) -> float:
    """
    Trigonometric series argument r_nu = (1 - 4cos^2(nu pi))^3 / (-4cos^2(nu pi)).

    :param nu: Rational parameter (float or Fraction)
    :return: r_nu
    :raises DomainError: When cos(nu pi) = 0
    """
    c2 = math.cos(float(nu) * math.pi) ** 2
    if c2 < 1e-28:
        raise DomainError(f"r_nu is undefined at nu={nu} (cos(nu pi) = 0)")
    return (1.0 - 4.0 * c2) ** 3 / (-4.0 * c2)


def r_frak_product(nu: Rational) -> float:
    """The same value as `r_frak` in the product form 16cos^3(nu pi + pi/6)cos^3(nu pi - pi/6)/cos^2(nu pi)."""
    angle = float(nu) * math.pi
    c = math.cos(angle)
    if c * c < 1e-28:
        raise DomainError(f"r_nu is undefined at nu={nu} (cos(nu pi) = 0)")
    return 16.0 * math.cos(angle + math.pi / 6) ** 3 * math.cos(angle - math.pi / 6) ** 3 / (c * c)


def solve_x_from_z3(z3: float) -> float:
    """
    Invert z3 = x^3/(x-1) on the branch x in [-3, c).

    :param z3: Series argument in (-27/4, 27/4]
    :return: The unique parameter x
    :raises DomainError: Outside the range
    """
    if not -CUBIC_RADIUS < z3 <= CUBIC_RADIUS:
        raise DomainError(f"z3 must lie in (-27/4, 27/4], got {z3}")
    if z3 == CUBIC_RADIUS:
        return -3.0
    if z3 == 0:
        return 0.0
    return solve_bracketed(lambda x: x**3 - z3 * (x - 1.0), -3.0, c_const(), tol=1e-15)


def solve_x_from_z4(z4: float) -> float:
    """
    Invert z4 = 4/(x(1-x)) on the branch x > (1+sqrt2)/2.

    :param z4: Series argument in (-16, 0)
    :return: The larger root of x^2 - x + 4/z4 = 0
    :raises DomainError: Outside (-16, 0)
    """
    if not -QUARTIC_RADIUS < z4 < 0:
        raise DomainError(f"z4 must lie in (-16, 0), got {z4}")
    return 0.5 * (1.0 + math.sqrt(1.0 - 16.0 / z4))


# ==========================================================================
# Polylogarithms
# ==========================================================================


def _bernoulli_numbers(n: int) -> np.ndarray:
    numbers = np.array(special.bernoulli(n), dtype=float)
    if n >= 1:
        numbers[1] = -0.5
    return numbers


def _zeta_int(s: int, bern: np.ndarray) -> float:
    """Riemann zeta at any integer except 1 (negative values from Bernoulli numbers)."""
    if s >= 2:
        return float(special.zeta(s))
    if s == 0:
        return -0.5
    j = -s
    return (-1) ** j * float(bern[j + 1]) / (j + 1)


def _li_series(n: int, z: complex) -> complex:
    total = 0j
    power = z
    k = 1
    while True:
        term = power / k**n
        total += term
        if abs(term) <= 1e-17 * max(abs(total), 1e-300):
            return total
        k += 1
        power *= z
        if k > 100_000:
            return total


def _li_log_expansion(n: int, z: complex) -> complex:
    """Expansion in powers of log z, valid for |log z| < 2 pi."""
    mu = cmath.log(z)
    bern = _bernoulli_numbers(202)
    total = 0j
    power = 1.0 + 0j
    factorial = 1.0
    for m in range(0, 200):
        if m > 0:
            power *= mu
            factorial *= m
        if m == n - 1:
            harm = harmonic(n - 1) if n > 1 else 0.0
            term = power / factorial * (harm - cmath.log(-mu))
        else:
            term = _zeta_int(n - m, bern) * power / factorial
        total += term
        if m > n and term != 0 and abs(term) < 1e-17 * abs(total):
            break
    return total


def _li_inversion(n: int, z: complex) -> complex:
    """Li_n(z) for |z| >= 1 from Li_n(1/z) and a Bernoulli polynomial."""
    two_pi_i = 2j * math.pi
    lz = cmath.log(z)
    bern = _bernoulli_numbers(n)
    x = lz / two_pi_i
    poly = sum(math.comb(n, k) * bern[k] * x ** (n - k) for k in range(n + 1))
    value = (-1) ** (n + 1) * _li_series(n, 1.0 / z) - two_pi_i**n / math.factorial(n) * poly
    if z.imag < 0 or (z.imag == 0 and z.real >= 1):
        value -= two_pi_i * lz ** (n - 1) / math.factorial(n - 1)
    return value


def li_n(n: int, z: Number) -> complex:
    """
    Classical polylogarithm Li_n(z) for n = 1..5, principal branch.

    Li_1 and Li_2 use closed forms (Li_2(z) = spence(1 - z)). Higher orders
    use the power series for |z| <= 0.75, the log-expansion near the unit
    circle and the inversion formula for |z| >= 1.4.

    :param n: Order, 1..5
    :param z: Argument off the cut (1, inf)
    :return: Li_n(z)
    :raises BranchCutError: For real z > 1
    """
    if not 1 <= n <= 5:
        raise DomainError(f"li_n supports orders 1..5, got {n}")
    z = complex(z)
    if z.imag == 0:
        # -0.0 would put cmath.log on the lower sheet
        z = complex(z.real, 0.0)
    if z.imag == 0 and z.real > 1:
        raise BranchCutError(f"Li_{n}({z.real}) lies on the branch cut (1, inf)")
    if z == 0:
        return 0j
    if n == 1:
        return -cmath.log(1.0 - z)
    if n == 2:
        return complex(special.spence(complex(1.0 - z)))
    if z == 1:
        return complex(zeta(n))
    if z == -1:
        return complex(-(1.0 - 2.0 ** (1 - n)) * zeta(n))

    radius = abs(z)
    if radius <= 0.75:
        value = _li_series(n, z)
    elif radius >= 1.4:
        value = _li_inversion(n, z)
    else:
        value = _li_log_expansion(n, z)
    if z.imag == 0:
        value = complex(value.real, 0.0)
    return value

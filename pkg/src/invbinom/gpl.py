"""
Generalized polylogarithms and multiple polylogarithms.

G(a_1, ..., a_n; z) is the iterated integral
    G(a_1, ..., a_n; z) = int_0^z dx/(x - a_1) G(a_2, ..., a_n; x),
with G(;z) = 1 and G(0, ..., 0; z) = log^n(z)/n!.

Words with a non-zero last letter are scale invariant, so every such word is
evaluated as G(a_1/z, ..., a_n/z; 1) on the unit segment. Each level of the
recursion is carried as node values of a piecewise Chebyshev interpolant on
a common mesh; integrating one level is a matrix product, so the cost grows
linearly with the weight. The mesh is bisected until every letter sits
outside a Bernstein ellipse of each panel, which also grades the mesh
geometrically towards a letter equal to z.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import chebyshev

from .config import get_config
from .exceptions import (
    DivergentWordError,
    GplError,
    LetterOnPathError,
    NonConvergedError,
    NotAbsConvergentError,
)
from .numkit import EPS, EvalResult, Method
from .utils import get_logger

logger = get_logger(__name__)

MAX_WEIGHT = 5
PATH_CLEARANCE = 1e-9
_SAME_POINT = 1e-14
_H_MIN = 1e-15
_P_LOW = 20
_P_HIGH = 32


@dataclass(frozen=True)
class GplWord:
    """Letters a_1..a_n and the argument z of G(a_1, ..., a_n; z)."""

    letters: Tuple[complex, ...]
    z: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(complex(a) for a in self.letters))
        object.__setattr__(self, "z", complex(self.z))

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def is_pure_zero(self) -> bool:
        return all(a == 0 for a in self.letters)


@dataclass(frozen=True)
class MplSpec:
    """Depths a_1..a_n and arguments z_1..z_n of Li_{a_1..a_n}(z_1..z_n)."""

    depths: Tuple[int, ...]
    args: Tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "depths", tuple(int(a) for a in self.depths))
        object.__setattr__(self, "args", tuple(complex(z) for z in self.args))
        if not self.depths or len(self.depths) != len(self.args):
            raise GplError("MPL needs as many depths as arguments, and at least one")
        if any(a < 1 for a in self.depths):
            raise GplError(f"MPL depths must be positive, got {self.depths}")
        if any(z == 0 for z in self.args):
            raise GplError("MPL arguments must be non-zero")
        if self.depths[0] == 1 and self.args[0] == 1:
            raise DivergentWordError("Li_{1,...}(1, ...) diverges")

    @property
    def weight(self) -> int:
        return sum(self.depths)

    def letters(self) -> Tuple[complex, ...]:
        """Letters of the equivalent GPL word at argument 1."""
        word: List[complex] = []
        product = 1 + 0j
        for depth, z in zip(self.depths, self.args):
            product *= z
            word.extend([0j] * (depth - 1))
            word.append(1.0 / product)
        return tuple(word)


# ==========================================================================
# Chebyshev rules
# ==========================================================================


@dataclass(frozen=True)
class _ChebRule:
    size: int
    nodes: np.ndarray
    running: np.ndarray
    total: np.ndarray


def _build_rule(size: int) -> _ChebRule:
    """Node values of f -> node values of int_{-1}^x f, and the full integral."""
    nodes = chebyshev.chebpts1(size)
    to_coeffs = np.linalg.inv(chebyshev.chebvander(nodes, size - 1))
    integrate = np.column_stack([chebyshev.chebint(np.eye(size)[j], lbnd=-1) for j in range(size)])
    running = chebyshev.chebvander(nodes, size) @ integrate @ to_coeffs
    total = chebyshev.chebvander(np.array([1.0]), size)[0] @ integrate @ to_coeffs
    for arr in (nodes, running, total):
        arr.setflags(write=False)
    return _ChebRule(size, nodes, running, total)


_RULES = {size: _build_rule(size) for size in (_P_LOW, _P_HIGH)}


# ==========================================================================
# Validation
# ==========================================================================


def _distance_to_unit_segment(p: complex) -> float:
    s = min(max(p.real, 0.0), 1.0)
    return abs(p - s)


def _normalise(word: GplWord) -> Tuple[complex, ...]:
    """Check convergence and path clearance, and return the letters scaled by 1/z."""
    letters, z = word.letters, word.z
    if letters[-1] == 0:
        raise DivergentWordError(f"Word {letters} ends in 0 but is not all zeros")
    if abs(letters[0] - z) <= _SAME_POINT * max(1.0, abs(z)):
        raise DivergentWordError(f"First letter {letters[0]} equals the argument {z}")

    scaled = []
    for a in letters:
        if a == 0:
            scaled.append(0j)
            continue
        p = a / z
        if abs(p - 1.0) <= _SAME_POINT:
            scaled.append(1.0 + 0j)
            continue
        if abs(z) * _distance_to_unit_segment(p) < PATH_CLEARANCE:
            raise LetterOnPathError(f"Letter {a} lies on the segment from 0 to {z}")
        scaled.append(p)
    return tuple(scaled)


# ==========================================================================
# Mesh and level integration
# ==========================================================================


def _bernstein_rho(points: np.ndarray, left: float, right: float) -> np.ndarray:
    center = 0.5 * (left + right)
    half = 0.5 * (right - left)
    w = (points - center) / half
    r = np.abs(w + np.sqrt(w - 1.0) * np.sqrt(w + 1.0))
    return np.maximum(r, 1.0 / np.maximum(r, 1e-300))


def _build_mesh(points: np.ndarray, rho_min: float, max_panels: int) -> np.ndarray:
    stack = [(0.0, 1.0)]
    panels: List[Tuple[float, float]] = []
    while stack:
        left, right = stack.pop()
        split = (
            points.size > 0
            and right - left > _H_MIN
            and bool(np.any(_bernstein_rho(points, left, right) < rho_min))
        )
        if split:
            mid = 0.5 * (left + right)
            stack.append((mid, right))
            stack.append((left, mid))
        else:
            panels.append((left, right))
        if len(panels) + len(stack) > max_panels:
            raise NonConvergedError(f"GPL mesh exceeds {max_panels} panels")
    return np.array(panels)


def _integrate_levels(letters: Sequence[complex], mesh: np.ndarray, rule: _ChebRule) -> complex:
    left, right = mesh[:, 0], mesh[:, 1]
    half = 0.5 * (right - left)
    x = rule.nodes
    sigma = left[:, None] + half[:, None] * (1.0 + x)[None, :]
    one_minus = (1.0 - right)[:, None] + half[:, None] * (1.0 - x)[None, :]
    near_zero = sigma <= 0.5

    def shift(p: complex) -> np.ndarray:
        # sigma - p, formed from whichever coordinate is exact near p.
        return np.where(near_zero, sigma - p, (1.0 - p) - one_minus)

    last = letters[-1]
    level = np.log(-shift(last) / last)
    for j in range(len(letters) - 2, -1, -1):
        p = letters[j]
        weight = 1.0 / sigma if p == 0 else 1.0 / shift(p)
        f = level * weight
        totals = half * (f @ rule.total)
        if j == 0:
            return complex(math.fsum(totals.real), math.fsum(totals.imag))
        offsets = np.concatenate(([0.0], np.cumsum(totals)[:-1]))
        level = offsets[:, None] + half[:, None] * (f @ rule.running.T)
    raise AssertionError("unreachable")


def gpl_eval(word: GplWord, tol: float = 1e-13, max_nodes: Optional[int] = None) -> EvalResult:
    """
    Evaluate G(a_1, ..., a_n; z) along the straight path from 0 to z.

    :param word: Letters and argument, weight at most 5
    :param tol: Target accuracy, used to size the mesh
    :param max_nodes: Node budget per level (defaults to ``INVBINOM_MAX_NODES``)
    :return: EvalResult with method CLOSED for short-circuited words, QUAD otherwise
    :raises DivergentWordError: If the first letter equals z or the word ends in 0
    :raises LetterOnPathError: If a letter lies within 1e-9 of the path
    """
    n = word.weight
    if n > MAX_WEIGHT:
        raise GplError(f"Weight {n} exceeds the supported maximum {MAX_WEIGHT}")
    if n == 0:
        return EvalResult(1.0, 0.0, 1, Method.CLOSED)
    z = word.z
    if word.is_pure_zero:
        if z == 0:
            raise DivergentWordError("G(0, ..., 0; 0) diverges")
        return EvalResult(cmath.log(z) ** n / math.factorial(n), 0.0, 1, Method.CLOSED)
    if z == 0:
        return EvalResult(0.0, 0.0, 1, Method.CLOSED)

    letters = _normalise(word)
    if n == 1:
        value = cmath.log(1.0 - z / word.letters[0])
        return EvalResult(value, EPS * max(1.0, abs(value)), 1, Method.CLOSED)

    budget = max_nodes if max_nodes is not None else get_config().max_nodes
    points = np.array([p for p in letters if p != 0], dtype=complex)
    rho_min = max(3.0, tol ** (-1.0 / _P_LOW))
    mesh = _build_mesh(points, rho_min, max(1, budget // _P_HIGH))

    fine = _integrate_levels(letters, mesh, _RULES[_P_HIGH])
    coarse = _integrate_levels(letters, mesh, _RULES[_P_LOW])
    if not (cmath.isfinite(fine) and cmath.isfinite(coarse)):
        raise NonConvergedError(f"GPL evaluation of {word.letters} produced a non-finite value")
    abs_err = abs(fine - coarse) + 16 * EPS * max(1.0, abs(fine))
    work = len(mesh) * (_P_HIGH + _P_LOW) * (n - 1)
    logger.debug("gpl_eval weight %d: %d panels, err %.2e", n, len(mesh), abs_err)
    return EvalResult(fine, abs_err, work, Method.QUAD)


def gpl(letters: Iterable[complex], z: complex, tol: float = 1e-13) -> complex:
    """Value of G(letters; z); shorthand for `gpl_eval`."""
    return gpl_eval(GplWord(tuple(letters), z), tol).value


# ==========================================================================
# Shuffles and multiple polylogarithms
# ==========================================================================


def shuffle_expand(a: complex, word: Sequence[complex]) -> List[Tuple[complex, ...]]:
    """
    Words of the shuffle G(a; t) G(b_1..b_r; t): a inserted at every position.

    :param a: The single letter
    :param word: Letters b_1..b_r
    :return: The r + 1 interleavings, a first to a last
    """
    word = tuple(word)
    return [word[:i] + (a,) + word[i:] for i in range(len(word) + 1)]


def shuffle_check(a: complex, word: Sequence[complex], z: complex, tol: float = 1e-13) -> float:
    """Absolute discrepancy |G(a;z)G(word;z) - sum over shuffles| for one case."""
    lhs = gpl((a,), z, tol) * gpl(word, z, tol)
    rhs = sum(gpl(w, z, tol) for w in shuffle_expand(a, word))
    return abs(lhs - rhs)


def mpl_eval(spec: MplSpec, tol: float = 1e-13) -> EvalResult:
    """
    Li_{a_1..a_n}(z_1..z_n) = (-1)^n G(0^{a_1-1}, 1/z_1, ..., 1/(z_1...z_n); 1).

    :param spec: Depths and arguments
    :param tol: Passed to `gpl_eval`
    :return: EvalResult of the GPL evaluation with the sign applied
    """
    result = gpl_eval(GplWord(spec.letters(), 1.0), tol)
    sign = (-1) ** len(spec.depths)
    return EvalResult(sign * result.value, result.abs_err, result.work, result.method)


def mpl(depths: Sequence[int], args: Sequence[complex], tol: float = 1e-13) -> complex:
    """Value of Li_{depths}(args); shorthand for `mpl_eval`."""
    return mpl_eval(MplSpec(tuple(depths), tuple(args)), tol).value


def mpl_series_oracle(spec: MplSpec, max_terms: Optional[int] = None, tol: float = 1e-17) -> EvalResult:
    """
    Nested-sum value sum_{l_1 > ... > l_n > 0} prod z_j^{l_j} / l_j^{a_j}.

    All indices are truncated at the same L, chosen from the largest prefix
    product |z_1...z_m|, which also drives the geometric tail bound.

    :param spec: Depths and arguments with every prefix product below 1 in modulus
    :param max_terms: Cap on the truncation index
    :param tol: Target tail bound
    :return: EvalResult with method DIRECT
    :raises NotAbsConvergentError: Outside the absolute-convergence region
    """
    prefix = np.cumprod(np.abs(np.array(spec.args)))
    ratio = float(prefix.max())
    if ratio >= 1.0:
        raise NotAbsConvergentError(f"Prefix products {prefix.tolist()} must stay below 1")
    cap = max_terms if max_terms is not None else 1_000_000
    length = math.ceil(math.log(tol) / math.log(ratio)) + 50 if ratio > 0 else 2
    length = max(2, min(length, cap))

    ell = np.arange(1, length + 1, dtype=float)
    series = np.power(spec.args[-1], ell) / ell ** spec.depths[-1]
    for depth, z in zip(reversed(spec.depths[:-1]), reversed(spec.args[:-1])):
        inner = np.concatenate(([0.0], np.cumsum(series)[:-1]))
        series = np.power(z, ell) / ell**depth * inner
    if not np.all(np.isfinite(series)):
        raise NotAbsConvergentError("Nested series overflowed; an argument is too large for direct powers")

    value = complex(np.sum(series))
    tail = abs(series[-1]) * ratio / (1.0 - ratio) if ratio > 0 else 0.0
    abs_err = tail + EPS * float(np.sum(np.abs(series)))
    return EvalResult(value, abs_err, length, Method.DIRECT)

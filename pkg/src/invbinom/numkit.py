"""
Foundation numerics for invbinom.

This module provides the kernels every higher layer is built on: adaptive
Gauss-Kronrod quadrature with optional endpoint log-singularity handling,
series summation with an explicit tail model, the Levin u-transform for
slowly convergent partial sums, and bracketed root finding.

All functions are pure; integrands and term generators are supplied by the
caller.
"""

import heapq
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Deque, List, Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize
from scipy.special import comb

from .config import get_config
from .exceptions import (
    BudgetExceededError,
    NoSignChangeError,
    NonConvergedError,
    NumericsError,
    TailUnboundedError,
    UnstableExtrapolationError,
)
from .utils import get_logger

logger = get_logger(__name__)

EPS = float(np.finfo(float).eps)


class Method(str, Enum):
    """How an `EvalResult` was produced."""

    DIRECT = "DIRECT"
    LEVIN = "LEVIN"
    QUAD = "QUAD"
    CLOSED = "CLOSED"


@dataclass(frozen=True)
class EvalResult:
    """
    A computed value with its error estimate and bookkeeping.

    :param value: The computed value
    :param abs_err: Estimated absolute error (finite, non-negative)
    :param work: Terms summed or integrand evaluations used
    :param method: Evaluation method tag
    :param notes: Free-form flags such as ``BOUNDARY_SLOW``
    """

    value: complex
    abs_err: float
    work: int
    method: Method
    notes: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "abs_err", float(self.abs_err))
        if not (self.abs_err >= 0.0 and math.isfinite(self.abs_err)):
            raise ValueError(f"abs_err must be finite and non-negative, got {self.abs_err}")

    def with_notes(self, *notes: str) -> "EvalResult":
        """Return a copy with extra notes appended."""
        return EvalResult(self.value, self.abs_err, self.work, self.method, self.notes + notes)


class TailKind(str, Enum):
    GEOMETRIC = "GEOMETRIC"
    POWER = "POWER"
    NONE = "NONE"


@dataclass(frozen=True)
class TailModel:
    """
    Declared asymptotics of a series, used to bound the remainder.

    GEOMETRIC carries the limiting term ratio, POWER the exponent p of
    |t_k| ~ k^p, NONE means "stop once terms drop below tolerance".
    """

    kind: TailKind
    parameter: float = 0.0

    @classmethod
    def geometric(cls, ratio: float) -> "TailModel":
        if not 0.0 < ratio < 1.0:
            raise TailUnboundedError(f"Geometric ratio must lie in (0, 1), got {ratio}")
        return cls(TailKind.GEOMETRIC, float(ratio))

    @classmethod
    def power(cls, exponent: float) -> "TailModel":
        return cls(TailKind.POWER, float(exponent))

    @classmethod
    def none(cls) -> "TailModel":
        return cls(TailKind.NONE)


# ==========================================================================
# Quadrature
# ==========================================================================

# 15-point Kronrod abscissae (positive half, descending) and weights, with
# the embedded 7-point Gauss weights.
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

_NODES = np.concatenate((-_XGK[:7], _XGK[7:], _XGK[:7][::-1]))
_WK15 = np.concatenate((_WGK[:7], _WGK[7:], _WGK[:7][::-1]))
_WG15 = np.zeros(15)
_WG15[[1, 13]] = _WG[0]
_WG15[[3, 11]] = _WG[1]
_WG15[[5, 9]] = _WG[2]
_WG15[7] = _WG[3]

Integrand = Callable[[np.ndarray], np.ndarray]
Singular = Literal["none", "left", "right", "both"]


def _gk15(f: Integrand, lefts: np.ndarray, rights: np.ndarray):
    centers = 0.5 * (lefts + rights)
    halves = 0.5 * (rights - lefts)
    t = centers[:, None] + halves[:, None] * _NODES[None, :]
    flat = t.ravel()
    vals = np.broadcast_to(np.asarray(f(flat), dtype=complex), flat.shape).reshape(t.shape)
    if not np.all(np.isfinite(vals)):
        raise NonConvergedError("Integrand is not finite at a quadrature node")
    kronrod = halves * (vals @ _WK15)
    gauss = halves * (vals @ _WG15)
    resabs = np.abs(halves) * (np.abs(vals) @ _WK15)
    return kronrod, np.abs(kronrod - gauss), resabs


def _adaptive(f: Integrand, breaks: Sequence[float], tol: float, budget: int) -> Tuple[complex, float, int]:
    a, b = breaks[0], breaks[-1]
    edges = np.asarray(breaks, dtype=float)
    k0, e0, r0 = _gk15(f, edges[:-1], edges[1:])
    nodes = 15 * len(k0)
    heap: List[Tuple[float, int, float, float, complex, float]] = [
        (-e0[i], i, edges[i], edges[i + 1], k0[i], r0[i]) for i in range(len(k0))
    ]
    heapq.heapify(heap)
    finished: List[Tuple[float, complex, float]] = []
    total, err_sum, resabs = complex(np.sum(k0)), float(np.sum(e0)), float(np.sum(r0))
    counter = len(k0)

    while heap:
        if err_sum <= max(tol, 50.0 * EPS * resabs):
            # Re-sum exactly before trusting the running totals.
            err_sum = math.fsum([-item[0] for item in heap] + [item[0] for item in finished])
            if err_sum <= max(tol, 50.0 * EPS * resabs):
                break
        if nodes + 30 > budget:
            raise NonConvergedError(
                f"Quadrature on [{a}, {b}] reached {nodes} nodes with error estimate {err_sum:.3e} > {tol:.3e}"
            )
        neg_err, _, lo, hi, kval, rval = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            finished.append((-neg_err, kval, rval))
            continue
        ks, es, rs = _gk15(f, np.array([lo, mid]), np.array([mid, hi]))
        nodes += 30
        total += ks[0] + ks[1] - kval
        err_sum += es[0] + es[1] + neg_err
        resabs += rs[0] + rs[1] - rval
        for idx, (x0, x1) in enumerate(((lo, mid), (mid, hi))):
            counter += 1
            heapq.heappush(heap, (-es[idx], counter, x0, x1, ks[idx], rs[idx]))

    values = [item[4] for item in heap] + [item[1] for item in finished]
    total = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    err_sum = math.fsum([-item[0] for item in heap] + [item[0] for item in finished])
    err_sum = max(err_sum, 50.0 * EPS * resabs)
    logger.trace("Quadrature on [%g, %g]: %d nodes, err %.3e", a, b, nodes, err_sum)
    return total, err_sum, nodes


def _substituted(f: Integrand, a: float, b: float, side: str) -> Tuple[Integrand, float]:
    """Map [a, b] onto u in [0, u_max] by t - a = (b - a)e^{-u} (or b - t)."""
    width = b - a
    anchor = a if side == "left" else b
    floor = max(4.0 * EPS * abs(anchor), 1e-300)
    u_max = min(700.0, math.log(width / floor))

    if side == "left":

        def g(u: np.ndarray) -> np.ndarray:
            s = width * np.exp(-u)
            return f(a + s) * s

    else:

        def g(u: np.ndarray) -> np.ndarray:
            s = width * np.exp(-u)
            return f(b - s) * s

    return g, u_max


def _geometric_breaks(u_max: float) -> List[float]:
    """Breakpoints 0, 1/4, 1/2, 1, 2, 4, ... below ``u_max``, then ``u_max``."""
    breaks = [0.0]
    edge = 0.25
    while edge < u_max:
        breaks.append(edge)
        edge *= 2.0
    breaks.append(u_max)
    return breaks


def adaptive_quad(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-12,
    singular: Singular = "none",
    max_nodes: Optional[int] = None,
) -> EvalResult:
    """
    Integrate a complex-valued function over [a, b].

    The integrand must accept a 1-D numpy array of abscissae and return the
    values at all of them. Endpoints flagged in ``singular`` are treated with
    the substitution t = e^{-u} (resp. 1 - t = e^{-u}), which turns an
    integrable logarithmic singularity into a smooth, exponentially decaying
    integrand.

    :param f: Vectorised integrand
    :param a: Lower limit
    :param b: Upper limit, ``a < b``
    :param tol: Absolute tolerance
    :param singular: Which endpoints carry a log singularity
    :param max_nodes: Node budget (defaults to ``INVBINOM_MAX_NODES``)
    :return: EvalResult with method QUAD
    :raises NonConvergedError: If the tolerance is unreachable within budget
    """
    if not a < b:
        raise ValueError(f"Need a < b, got a={a}, b={b}")
    if singular not in ("none", "left", "right", "both"):
        raise ValueError(f"Unknown singular flag {singular!r}")
    budget = max_nodes if max_nodes is not None else get_config().max_nodes

    if singular == "none":
        pieces = [(f, [a, b])]
    elif singular == "both":
        mid = a + 0.5 * (b - a)
        g_left, u_left = _substituted(f, a, mid, "left")
        g_right, u_right = _substituted(f, mid, b, "right")
        pieces = [(g_left, _geometric_breaks(u_left)), (g_right, _geometric_breaks(u_right))]
    else:
        g, u_max = _substituted(f, a, b, singular)
        pieces = [(g, _geometric_breaks(u_max))]

    value = 0j
    err = 0.0
    nodes = 0
    share = tol / len(pieces)
    for integrand, breaks in pieces:
        v, e, n = _adaptive(integrand, breaks, share, budget - nodes)
        value += v
        err += e
        nodes += n

    logger.debug("adaptive_quad [%g, %g] singular=%s -> %d nodes, err %.2e", a, b, singular, nodes, err)
    return EvalResult(value, err, nodes, Method.QUAD)


# ==========================================================================
# Series
# ==========================================================================


class _Accumulator:
    """Neumaier-compensated complex running sum."""

    def __init__(self) -> None:
        self._re = 0.0
        self._im = 0.0
        self._cre = 0.0
        self._cim = 0.0
        self.abs_sum = 0.0

    @staticmethod
    def _step(total: float, comp: float, x: float) -> Tuple[float, float]:
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        return t, comp

    def add(self, value: complex) -> None:
        self._re, self._cre = self._step(self._re, self._cre, value.real)
        self._im, self._cim = self._step(self._im, self._cim, value.imag)
        self.abs_sum += abs(value)

    @property
    def value(self) -> complex:
        return complex(self._re + self._cre, self._im + self._cim)


TAIL_WINDOW = 4


def _tail_bound(tail: TailModel, k: int, recent: Sequence[float]) -> Optional[float]:
    # Largest of the last few magnitudes; observed ratios only between nonzero terms.
    reference = max(recent)
    if tail.kind is TailKind.GEOMETRIC:
        ratio = tail.parameter
        if len(recent) > 1 and recent[-1] > 0.0 and recent[-2] > 0.0:
            ratio = max(ratio, recent[-1] / recent[-2])
        if ratio >= 1.0:
            return None
        return reference * ratio / (1.0 - ratio)
    if tail.kind is TailKind.POWER:
        return reference * max(k, 1) / (-tail.parameter - 1.0)
    return reference


def sum_series(
    term: Callable[[int], complex],
    start_k: int,
    tail: TailModel,
    tol: float = 1e-15,
    max_terms: Optional[int] = None,
) -> EvalResult:
    """
    Sum ``term(k)`` for k = start_k, start_k + 1, ... until the tail bound
    drops below ``tol``.

    Terms are requested in increasing k, one call per index, so stateful
    generators are allowed. For GEOMETRIC tails the bound is
    |t_N| rho/(1 - rho), where rho is the larger of the declared ratio and the
    last observed ratio |t_N/t_{N-1}|, and |t_N| is replaced by the largest
    magnitude among the last few terms. A series whose terms so far all
    vanish stops at once.

    :param term: Map from index to summand
    :param start_k: First index
    :param tail: Declared tail model
    :param tol: Absolute tolerance on the tail bound
    :param max_terms: Term budget (defaults to ``INVBINOM_MAX_TERMS``)
    :return: EvalResult with method DIRECT
    :raises TailUnboundedError: For POWER tails with exponent >= -1
    :raises BudgetExceededError: When the budget runs out first
    """
    if tail.kind is TailKind.POWER and tail.parameter >= -1.0:
        raise TailUnboundedError(f"Power tail with exponent {tail.parameter} is not summable")
    budget = max_terms if max_terms is not None else get_config().max_terms

    acc = _Accumulator()
    recent: Deque[float] = deque(maxlen=TAIL_WINDOW)
    k = start_k
    count = 0
    while True:
        if count >= budget:
            raise BudgetExceededError(
                f"Series not converged after {count} terms (partial sum {acc.value!r})"
            )
        t = complex(term(k))
        count += 1
        magnitude = abs(t)
        if not math.isfinite(magnitude):
            raise NumericsError(f"Non-finite term at k={k}")
        acc.add(t)
        recent.append(magnitude)
        bound = _tail_bound(tail, k, recent)
        if bound is not None and bound <= tol:
            break
        if count % 100_000 == 0:
            logger.trace("sum_series: %d terms, last |t|=%.3e", count, magnitude)
        k += 1

    abs_err = bound + EPS * acc.abs_sum
    logger.debug("sum_series from k=%d: %d terms, tail bound %.2e", start_k, count, bound)
    return EvalResult(acc.value, abs_err, count, Method.DIRECT)


def collect_partial_sums(term: Callable[[int], complex], start_k: int, count: int) -> np.ndarray:
    """Return the first ``count`` partial sums of ``term`` starting at ``start_k``."""
    terms = np.fromiter((complex(term(start_k + j)) for j in range(count)), dtype=complex, count=count)
    return np.cumsum(terms)


def levin_accelerate(
    partial_sums: Sequence[complex],
    beta: float = 1.0,
    max_order: int = 40,
) -> EvalResult:
    """
    Extrapolate the limit of a sequence of partial sums with the Levin
    u-transform.

    Every order from 2 up to ``max_order`` (or the sequence length) is
    formed; the order whose estimate moved least from its predecessor is
    returned and that movement is the error estimate.

    :param partial_sums: At least 8 partial sums
    :param beta: Levin shift parameter
    :param max_order: Highest transform order tried
    :return: EvalResult with method LEVIN
    :raises UnstableExtrapolationError: If no order settles
    """
    s = np.asarray(partial_sums, dtype=complex)
    n = s.size
    if n < 8:
        raise ValueError(f"Levin acceleration needs at least 8 partial sums, got {n}")
    if not np.all(np.isfinite(s)):
        raise UnstableExtrapolationError("Partial sums are not finite")

    terms = np.diff(s, prepend=0.0)
    zeros = np.flatnonzero(terms == 0)
    if zeros.size:
        first = int(zeros[0])
        if np.all(terms[first:] == 0):
            return EvalResult(s[-1], 0.0, n, Method.LEVIN)
        if first < 4:
            raise UnstableExtrapolationError("Sequence has a vanishing increment too early to extrapolate")
        s, terms = s[:first], terms[:first]

    top = min(s.size - 1, max_order)
    omega = (beta + np.arange(s.size)) * terms
    estimates = []
    for order in range(1, top + 1):
        j = np.arange(order + 1)
        weights = (-1.0) ** j * comb(order, j) * ((beta + j) / (beta + order)) ** (order - 1)
        num = np.sum(weights * s[: order + 1] / omega[: order + 1])
        den = np.sum(weights / omega[: order + 1])
        estimates.append(num / den)

    estimates = np.asarray(estimates)
    diffs = np.abs(np.diff(estimates))
    finite = np.isfinite(diffs)
    if not np.any(finite):
        raise UnstableExtrapolationError("Levin transform produced no finite estimate")
    diffs = np.where(finite, diffs, np.inf)
    best = int(np.argmin(diffs))
    value = complex(estimates[best + 1])
    err = float(diffs[best])
    if err > 1e-2 * max(1.0, abs(value)):
        raise UnstableExtrapolationError(
            f"Levin orders do not settle (smallest step {err:.3e} at order {best + 2})"
        )
    logger.debug("levin_accelerate: %d sums, order %d, step %.2e", n, best + 2, err)
    return EvalResult(value, max(err, EPS * abs(value)), n, Method.LEVIN)


# ==========================================================================
# Roots
# ==========================================================================


def solve_bracketed(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-14) -> float:
    """
    Find a root of ``f`` inside the bracket [lo, hi].

    Uses Brent's method, which keeps the bracket at every step and falls back
    to bisection whenever the interpolation step misbehaves.

    :param f: Continuous real function
    :param lo: Left end of the bracket
    :param hi: Right end of the bracket
    :param tol: Absolute tolerance on the root
    :return: The root
    :raises NoSignChangeError: If f(lo) and f(hi) share a sign
    """
    if not lo < hi:
        raise ValueError(f"Need lo < hi, got lo={lo}, hi={hi}")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NoSignChangeError(f"f({lo})={flo:.3e} and f({hi})={fhi:.3e} have the same sign")
    try:
        root = optimize.brentq(f, lo, hi, xtol=max(tol, 1e-300), rtol=4 * EPS, maxiter=500)
    except RuntimeError as e:
        raise NonConvergedError(f"Root search on [{lo}, {hi}] did not converge") from e
    logger.trace("solve_bracketed on [%g, %g] -> %r", lo, hi, root)
    return float(root)

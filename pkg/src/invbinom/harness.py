"""
Verification suites for the inverse binomial identities.

This module turns the identity registry of `invbinom.closedform` and the
property checks of `invbinom.gpl`, `invbinom.binom` and `invbinom.specfun`
into `Check` objects, evaluates them on a worker pool and assembles an
order-stable `Report` that can be written as JSON or CSV. It also hosts
`eval_cmd`, the single-expression evaluator behind ``invbinom eval``.
"""

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__
from .binom import (
    Family,
    IntegralRep,
    Numerator,
    SumSpec,
    Weighting,
    rep_min_k,
    sum_family,
    sum_family_with_integral,
    term_closed,
    term_oracle_integral,
)
from .closedform import (
    REGISTRY,
    IdentityId,
    closed_eval,
    deriv_relation_check,
    get_identity,
    lhs_eval,
    tolerance,
)
from .config import get_config
from .exceptions import ConfigurationError, InvBinomException, ParseError
from .gpl import GplWord, MplSpec, gpl_eval, mpl_eval, mpl_series_oracle, shuffle_check
from .numkit import EPS, EvalResult, Method
from .specfun import (
    catalan,
    r_frak,
    r_frak_product,
    solve_x_from_z3,
    solve_x_from_z4,
    z3_of,
    z4_of,
)
from .utils import complex_to_dict, get_logger, parse_complex, parse_int_list, parse_letters, parse_rational

logger = get_logger(__name__)

DEFAULT_SEED = 20240917
FORMATS = ("json", "csv")
CSV_COLUMNS = (
    "identity",
    "param_re",
    "param_im",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_diff",
    "tol",
    "passed",
    "lhs_method",
    "rhs_method",
    "wall_time_ms",
    "error",
)

Side = Callable[[], Union[EvalResult, complex, float]]


@dataclass(frozen=True)
class Check:
    """One pending comparison of two numerically independent values."""

    identity: str
    param: complex
    lhs: Side
    rhs: Side
    tol: float


@dataclass(frozen=True)
class VerificationRecord:
    """
    Outcome of one check.

    A record whose evaluation raised carries the error text, ``passed`` False
    and no values.
    """

    identity: str
    param: complex
    lhs: Optional[complex]
    rhs: Optional[complex]
    abs_diff: Optional[float]
    tol: float
    passed: bool
    lhs_method: str
    rhs_method: str
    wall_time_ms: float
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "param": complex_to_dict(self.param),
            "lhs": None if self.lhs is None else complex_to_dict(self.lhs),
            "rhs": None if self.rhs is None else complex_to_dict(self.rhs),
            "abs_diff": self.abs_diff,
            "tol": self.tol,
            "passed": self.passed,
            "lhs_method": self.lhs_method,
            "rhs_method": self.rhs_method,
            "wall_time_ms": self.wall_time_ms,
            "error": self.error,
        }

    def to_row(self) -> Dict[str, Any]:
        def part(value: Optional[complex], attr: str) -> Any:
            return "" if value is None else getattr(value, attr)

        return {
            "identity": self.identity,
            "param_re": self.param.real,
            "param_im": self.param.imag,
            "lhs_re": part(self.lhs, "real"),
            "lhs_im": part(self.lhs, "imag"),
            "rhs_re": part(self.rhs, "real"),
            "rhs_im": part(self.rhs, "imag"),
            "abs_diff": "" if self.abs_diff is None else self.abs_diff,
            "tol": self.tol,
            "passed": self.passed,
            "lhs_method": self.lhs_method,
            "rhs_method": self.rhs_method,
            "wall_time_ms": self.wall_time_ms,
            "error": self.error or "",
        }


@dataclass
class SuiteConfig:
    """
    What to run and where to write it.

    :param suite: Suite name or ``all``
    :param grid: Replacement grid for identity checks (None keeps the defaults)
    :param tol: Tolerance applied to every check (None keeps the defaults)
    :param tol_overrides: Per-identity tolerances, keyed by identity name
    :param max_terms: Series term budget for this run
    :param max_nodes: Quadrature node budget for this run
    :param output: Report path, or None for no file
    :param fmt: ``json`` or ``csv``
    :param seed: Seed of the random property grids
    :param workers: Worker threads (defaults to ``INVBINOM_WORKERS``)
    """

    suite: str = "all"
    grid: Optional[List[complex]] = None
    tol: Optional[float] = None
    tol_overrides: Dict[str, float] = field(default_factory=dict)
    max_terms: Optional[int] = None
    max_nodes: Optional[int] = None
    output: Optional[str] = None
    fmt: str = "json"
    seed: int = DEFAULT_SEED
    workers: Optional[int] = None

    def validate(self) -> None:
        """
        Reject unknown suites, formats, budgets and out-of-domain grid points.

        :raises ConfigurationError: On the first problem found
        """
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigurationError(f"Unknown suite {self.suite!r}; choose from {', '.join(suite_names())}")
        if self.fmt not in FORMATS:
            raise ConfigurationError(f"Unknown report format {self.fmt!r}; choose json or csv")
        for name, value in (("tol", self.tol), ("max_terms", self.max_terms), ("max_nodes", self.max_nodes), ("workers", self.workers)):
            if value is not None and not value > 0:
                raise ConfigurationError(f"{name} must be positive, got {value}")
        for key, value in self.tol_overrides.items():
            if not value > 0:
                raise ConfigurationError(f"Tolerance override for {key} must be positive, got {value}")
        if self.grid is None:
            return
        for name in self.suite_list():
            for identity in SUITES[name].identities:
                spec = REGISTRY[identity]
                bad = [p for p in self.grid if not spec.domain(complex(p))]
                if bad:
                    raise ConfigurationError(f"Grid points {bad} lie outside the domain of {identity.value} ({spec.domain_text})")

    def suite_list(self) -> List[str]:
        return suite_names() if self.suite == "all" else [self.suite]


@dataclass
class Report:
    suite: str
    timestamp: str
    tool_version: str
    records: List[VerificationRecord]

    @property
    def summary(self) -> Dict[str, Any]:
        diffs = [r.abs_diff for r in self.records if r.abs_diff is not None]
        return {
            "total": len(self.records),
            "passed": sum(r.passed for r in self.records),
            "failed": sum(not r.passed and r.error is None for r in self.records),
            "errors": sum(r.error is not None for r in self.records),
            "max_abs_diff": max(diffs) if diffs else 0.0,
        }

    @property
    def exit_code(self) -> int:
        """0 when every record passed (an empty report included), 1 otherwise."""
        return 0 if all(r.passed for r in self.records) else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary,
        }


# ==========================================================================
# Suites
# ==========================================================================


@dataclass(frozen=True)
class Suite:
    """A named group of checks: registry identities plus optional extra builders."""

    name: str
    description: str
    identities: Tuple[IdentityId, ...] = ()
    extras: Tuple[Callable[["SuiteConfig", np.random.Generator], List[Check]], ...] = ()


def _tol_for(config: SuiteConfig, identity: str, default: float) -> float:
    if identity in config.tol_overrides:
        return config.tol_overrides[identity]
    if config.tol is not None:
        return config.tol
    return default


def _identity_checks(config: SuiteConfig, identities: Sequence[IdentityId]) -> List[Check]:
    checks = []
    for identity in identities:
        spec = REGISTRY[identity]
        grid = spec.grid if config.grid is None else tuple(complex(p) for p in config.grid)
        for param in grid:
            checks.append(
                Check(
                    identity.value,
                    param,
                    lambda i=identity, p=param: lhs_eval(i, p),
                    lambda i=identity, p=param: closed_eval(i, p),
                    _tol_for(config, identity.value, tolerance(identity, param)),
                )
            )
    return checks


def _boundary_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    points = ((IdentityId.TBL_S30, 0j), (IdentityId.ARCSIN_SQ, 2 + 0j))
    return [
        Check(
            identity.value,
            param,
            lambda i=identity, p=param: lhs_eval(i, p),
            lambda i=identity, p=param: closed_eval(i, p),
            _tol_for(config, identity.value, tolerance(identity, param)),
        )
        for identity, param in points
    ]


def _mirror_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    """x <-> 1-x symmetry of the two quartic closed forms."""
    checks = []
    for identity in (IdentityId.THM13B, IdentityId.THM14):
        name = f"{identity.value}_MIRROR"
        for x in (1.3, 1.5, 2.0, 3.0):
            checks.append(
                Check(
                    name,
                    complex(x),
                    lambda i=identity, p=x: closed_eval(i, p),
                    lambda i=identity, p=x: closed_eval(i, 1 - p),
                    _tol_for(config, name, 1e-12),
                )
            )
    return checks


def _special_value_cross_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    """The value at z = 8/3 from the x-parametrised closed form at x = -2."""
    name = "EQ_KP1_83_VIA_THM11"
    return [
        Check(
            name,
            -2 + 0j,
            lambda: closed_eval(IdentityId.THM11, -2.0),
            lambda: closed_eval(IdentityId.EQ_KP1_83, 8 / 3),
            _tol_for(config, name, 1e-12),
        )
    ]


def _catalan_check(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    name = "CATALAN_VIA_GPL"
    return [
        Check(
            name,
            1j,
            lambda: mpl_eval(MplSpec((2,), (1j,))).value.imag,
            catalan,
            _tol_for(config, name, 1e-12),
        )
    ]


def _r_frak_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    name = "R_FRAK_PRODUCT"
    points = (0.0, 0.1, 0.2, 1 / 6, 2 / 9, 0.3, 0.4, 5 / 12)
    return [
        Check(name, complex(nu), lambda n=nu: r_frak(n), lambda n=nu: r_frak_product(n), _tol_for(config, name, 1e-12))
        for nu in points
    ]


def _integral_rep_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    checks = []
    for rep in IntegralRep:
        name = f"INT_{rep.value}"
        for k in range(rep_min_k(rep), 9):
            checks.append(
                Check(
                    name,
                    complex(k),
                    lambda r=rep, n=k: term_closed(r, n),
                    lambda r=rep, n=k: term_oracle_integral(r, n),
                    _tol_for(config, name, 1e-11),
                )
            )
    return checks


_GENERATING_CASES = (
    (Family.C3, Weighting.THREE_K_PLUS_1, 0, Numerator.HK_MINUS_H3K1),
    (Family.C3, Weighting.PLAIN, 1, Numerator.H2K_MINUS_H3K),
    (Family.C3, Weighting.TWO_K_MINUS_1, 0, Numerator.ONE),
    (Family.C3, Weighting.TWO_K_MINUS_1, 0, Numerator.H2KM2_MINUS_H3KM1),
    (Family.C3, Weighting.THREE_K_PAIR, 0, Numerator.HK_MINUS_H3K3),
    (Family.C4, Weighting.FOUR_K_PLUS_1, 0, Numerator.H2K_MINUS_H4K1),
    (Family.C4, Weighting.PLAIN, 1, Numerator.H2KM1_MINUS_H4K),
    (Family.C2, Weighting.PLAIN, 1, Numerator.ONE),
)


def _generating_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    """Whole series against the integral of their summed representations."""
    checks = []
    for family, weighting, r, numerator in _GENERATING_CASES:
        name = f"GF_{family.value}_{weighting.value}_R{r}_{numerator.value}"
        for fraction in (-0.6, 0.3, 0.8):
            spec = SumSpec(family, r, numerator, fraction * family.radius, weighting)
            checks.append(
                Check(
                    name,
                    complex(spec.z),
                    lambda s=spec: sum_family(s),
                    lambda s=spec: sum_family_with_integral(s),
                    _tol_for(config, name, 1e-11),
                )
            )
    return checks


def _derivative_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    name = "DERIV_RELATION"
    return [
        Check(name, complex(x), lambda p=x: deriv_relation_check(1, p), lambda: 0.0, _tol_for(config, name, 1e-7))
        for x in (-1.0, 0.5)
    ]


def _random_letter(rng: np.random.Generator, low: float, high: float) -> complex:
    radius = rng.uniform(low, high)
    angle = rng.uniform(-math.pi, math.pi)
    return complex(radius * math.cos(angle), radius * math.sin(angle))


def _shuffle_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    name = "SHUFFLE"
    checks = []
    for _ in range(50):
        z = _random_letter(rng, 0.2, 0.9)
        a = _random_letter(rng, 1.2, 3.0)
        word = tuple(_random_letter(rng, 1.2, 3.0) for _ in range(int(rng.integers(1, 3))))
        checks.append(Check(name, z, lambda a=a, w=word, z=z: shuffle_check(a, w, z), lambda: 0.0, _tol_for(config, name, 1e-9)))
    return checks


def _mpl_oracle_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    name = "MPL_ORACLE"
    checks = []
    while len(checks) < 30:
        depth_count = int(rng.integers(1, 4))
        depths = tuple(int(d) for d in rng.integers(1, 3, size=depth_count))
        if sum(depths) > 3:
            continue
        args = tuple(_random_letter(rng, 0.2, 0.9) for _ in depths)
        spec = MplSpec(depths, args)
        checks.append(
            Check(name, args[0], lambda s=spec: mpl_eval(s), lambda s=spec: mpl_series_oracle(s), _tol_for(config, name, 1e-9))
        )
    return checks


def _functional_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    """Newman, Landen and the log-log integral on seeded random points."""
    checks = []
    xs = [x for x in rng.uniform(-2.9, 0.85, size=24) if abs(x) > 0.05][:20]
    zs = [z for z in (complex(a, b) for a, b in rng.uniform(-3.0, 3.0, size=(30, 2))) if abs(z - 1) > 0.1 and abs(z) > 0.05][:20]
    taus = [complex(a, b) for a, b in zip(rng.uniform(0.1, 3.0, size=10), rng.uniform(-2.0, 2.0, size=10))]
    for identity, points in ((IdentityId.NEWMAN_SUM, xs), (IdentityId.LANDEN, zs), (IdentityId.LOGLOG_TAU, taus)):
        spec = REGISTRY[identity]
        for p in points:
            param = complex(p)
            checks.append(
                Check(
                    identity.value,
                    param,
                    lambda i=identity, q=param: lhs_eval(i, q),
                    lambda i=identity, q=param: closed_eval(i, q),
                    _tol_for(config, identity.value, spec.tol),
                )
            )
    return checks


def _roundtrip_checks(config: SuiteConfig, _: np.random.Generator) -> List[Check]:
    checks = []
    cubic = "ROUNDTRIP_Z3"
    for x in np.linspace(-2.999, 0.89, 1000):
        x = float(x)
        checks.append(Check(cubic, complex(x), lambda p=x: solve_x_from_z3(z3_of(p)), lambda p=x: p, _tol_for(config, cubic, 1e-12)))
    quartic = "ROUNDTRIP_Z4"
    for x in np.linspace(1.21, 50.0, 1000):
        x = float(x)
        checks.append(
            Check(quartic, complex(x), lambda p=x: solve_x_from_z4(z4_of(p).real), lambda p=x: p, _tol_for(config, quartic, 1e-12))
        )
    return checks


_I = IdentityId

SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("thm11", "C(3k,k) series with 1/(k+1)", (_I.THM11,)),
        Suite("thm12", "C(3k,k) series with 1/k^2", (_I.THM12,)),
        Suite("thm13a", "C(4k,2k) series with 1/(k+1) in X", (_I.THM13A, _I.EQ_4K_KP1)),
        Suite("thm13b", "C(4k,2k) series with 1/(k+1) in x", (_I.THM13B,), (_mirror_checks,)),
        Suite("thm14", "C(4k,2k) series with 1/k^2", (_I.THM14,)),
        Suite("special-values", "Evaluations at z = 1/2, 8/3, 4 and the k-free series", (_I.EQ_KP1_HALF, _I.EQ_KP1_83, _I.KFREE_C3), (_special_value_cross_checks,)),
        Suite("thm15", "Harmonic-weighted C(3k,k) series", (_I.T15_HK_H2K_3K1, _I.T15_HK_H3K_3K1, _I.T15_HK_H2K_3K2, _I.T15_HK_H2K_2K1, _I.T15_HK_H3K_2K1)),
        Suite("thm16", "Harmonic-weighted C(4k,2k) series through weight-2 GPLs", (_I.T16_HK_4K1, _I.T16_HK_4K3)),
        Suite("remark", "Weight-2 series with 1/k", (_I.R_1K, _I.R_H2K_H3K, _I.R_HK1_H2K)),
        Suite(
            "proof-identities",
            "Auxiliary identities used along the way",
            (_I.CK2K_KP2, _I.ARCSIN_SQ, _I.X2K_K2_C4, _I.LOGLOG_TAU, _I.KFREE_LOG_INTEGRAL, _I.PAIR_HK_H2K2, _I.HK_OVER_K_GF),
        ),
        Suite("integral-reps", "Per-term integral representations and their generating functions", (), (_integral_rep_checks, _generating_checks)),
        Suite("half-values", "Examples at z = 1/2 in weights 2 to 5", (_I.COR_K2, _I.COR_K3, _I.COR_K4, _I.COR_K5), (_catalan_check,)),
        Suite("tables", "Tabulated values at roots of unity", (_I.TBL_S30, _I.TBL_T15_HALF_3K1, _I.TBL_T15_HALF_2K1, _I.L12_HK_4K1, _I.L12_HK_4K3), (_r_frak_checks,)),
        Suite("boundary", "Series on their radius of convergence", (), (_boundary_checks,)),
        Suite("derivative", "Finite-difference derivative relation", (), (_derivative_checks,)),
        Suite("shuffle", "Shuffle products of GPLs", (), (_shuffle_checks,)),
        Suite("mpl-oracle", "MPLs against their nested series", (), (_mpl_oracle_checks,)),
        Suite("functional", "Dilogarithm functional equations and the log-log integral", (), (_functional_checks,)),
        Suite("roundtrip", "Series argument to parameter inversions", (), (_roundtrip_checks,)),
    )
}


def suite_names() -> List[str]:
    return list(SUITES)


def build_checks(config: SuiteConfig) -> List[Check]:
    """
    Expand the configured suite(s) into checks.

    Each suite draws its random points from its own generator seeded with
    ``config.seed``, so a suite produces the same checks alone or inside ``all``.

    :param config: Validated configuration
    :return: The checks in suite order
    """
    checks: List[Check] = []
    for name in config.suite_list():
        suite = SUITES[name]
        rng = np.random.default_rng(config.seed)
        checks.extend(_identity_checks(config, suite.identities))
        if config.grid is not None and suite.extras:
            logger.warning("Grid override ignored by the property checks of suite %s", name)
        for extra in suite.extras:
            checks.extend(extra(config, rng))
    return checks


# ==========================================================================
# Running
# ==========================================================================


def _resolve(value: Union[EvalResult, complex, float]) -> Tuple[complex, str]:
    if isinstance(value, EvalResult):
        return value.value, value.method.value
    return complex(value), Method.CLOSED.value


def evaluate_check(check: Check) -> VerificationRecord:
    """
    Evaluate both sides of one check.

    Library errors are recorded on the record instead of propagating.

    :param check: The check
    :return: Its record
    """
    started = time.perf_counter()
    try:
        lhs, lhs_method = _resolve(check.lhs())
        rhs, rhs_method = _resolve(check.rhs())
    except (InvBinomException, ValueError, ArithmeticError) as e:
        elapsed = (time.perf_counter() - started) * 1000.0
        code = getattr(e, "code", type(e).__name__)
        logger.debug("Check %s at %s raised %s: %s", check.identity, check.param, code, e)
        return VerificationRecord(check.identity, check.param, None, None, None, check.tol, False, "", "", elapsed, f"{code}: {e}")
    elapsed = (time.perf_counter() - started) * 1000.0
    diff = abs(lhs - rhs)
    passed = bool(diff <= check.tol)
    if not passed:
        logger.debug("Check %s at %s failed: |%r - %r| = %.3e > %.1e", check.identity, check.param, lhs, rhs, diff, check.tol)
    return VerificationRecord(check.identity, check.param, lhs, rhs, diff, check.tol, passed, lhs_method, rhs_method, elapsed)


@contextmanager
def _budgets(config: SuiteConfig) -> Iterator[None]:
    """Expose the run's budgets to the evaluators through their environment variables."""
    overrides = {"INVBINOM_MAX_TERMS": config.max_terms, "INVBINOM_MAX_NODES": config.max_nodes}
    saved = {name: os.environ.get(name) for name in overrides}
    try:
        for name, value in overrides.items():
            if value is not None:
                os.environ[name] = str(int(value))
        yield
    finally:
        for name, value in saved.items():
            if value is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = value


def _sort_key(record: VerificationRecord) -> Tuple[str, float, float]:
    return record.identity, record.param.real, record.param.imag


def run_suite(config: SuiteConfig) -> Report:
    """
    Run a suite (or all of them) and return the sorted report.

    :param config: What to run
    :return: Report with records sorted by identity then parameter
    :raises ConfigurationError: If the configuration is invalid
    """
    config.validate()
    checks = build_checks(config)
    timestamp = datetime.now(timezone.utc).isoformat()
    if not checks:
        logger.warning("Suite %s has no checks; writing an empty report", config.suite)
        return Report(config.suite, timestamp, __version__, [])

    workers = config.workers or get_config().workers
    logger.info("Running %d checks of suite %s on %d workers", len(checks), config.suite, workers)
    records: List[VerificationRecord] = []
    with _budgets(config):
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(evaluate_check, check) for check in checks]
            for future in as_completed(futures):
                records.append(future.result())

    records.sort(key=_sort_key)
    report = Report(config.suite, timestamp, __version__, records)
    summary = report.summary
    logger.info(
        "Suite %s: %d/%d passed, %d errors, max abs_diff %.3e",
        config.suite,
        summary["passed"],
        summary["total"],
        summary["errors"],
        summary["max_abs_diff"],
    )
    return report


def write_report(report: Report, path: str, fmt: str = "json") -> None:
    """
    Write a report as JSON or CSV.

    :param report: The report
    :param path: Output file
    :param fmt: ``json`` or ``csv``
    :raises ConfigurationError: For an unknown format
    """
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for record in report.records:
                writer.writerow(record.to_row())
    else:
        raise ConfigurationError(f"Unknown report format {fmt!r}")
    logger.debug("Wrote %d records to %s", len(report.records), path)


def load_grid(path: str) -> List[complex]:
    """
    Read a grid file: a JSON list of numbers or complex literals such as ``"0.3+0.4i"``.

    :param path: The file
    :return: The grid points
    :raises ConfigurationError: If the file is missing or malformed
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Cannot read grid file {path}: {e}") from e
    if not isinstance(raw, list):
        raise ConfigurationError(f"Grid file {path} must hold a JSON list")
    try:
        return [parse_complex(item) for item in raw]
    except ParseError as e:
        raise ConfigurationError(f"Grid file {path}: {e}") from e


# ==========================================================================
# Single evaluations
# ==========================================================================

EVAL_KINDS = ("series", "gpl", "mpl", "closed")
_PARAM_KEYS = ("x", "X", "z", "tau", "w", "nu", "param")


def _enum_arg(enum_cls, text: str, key: str):
    try:
        return enum_cls(text.strip().upper())
    except ValueError as e:
        choices = ", ".join(m.value.lower() for m in enum_cls)
        raise ParseError(f"Unknown {key} {text!r}; choose from {choices}") from e


def _require(args: Mapping[str, str], key: str) -> str:
    if key not in args:
        raise ParseError(f"Missing argument {key}=...")
    return args[key]


def _series_spec(args: Mapping[str, str]) -> SumSpec:
    family = _enum_arg(Family, _require(args, "family"), "family")
    numerator = _enum_arg(Numerator, args.get("seq", "one"), "seq")
    weighting = _enum_arg(Weighting, args.get("weight", "plain"), "weight")
    try:
        r = int(_require(args, "r"))
    except ValueError as e:
        raise ParseError(f"r must be an integer, got {args['r']!r}") from e
    z = parse_complex(_require(args, "z"))
    if z.imag == 0:
        z = z.real
    powers = tuple(parse_int_list(args.get("powers", "")))
    boundary = args.get("boundary", "false").strip().lower() in ("1", "true", "yes")
    return SumSpec(family, r, numerator, z, weighting, powers, boundary)


def eval_cmd(kind: str, args: Mapping[str, str]) -> EvalResult:
    """
    Evaluate one expression described by ``key=value`` arguments.

    - ``series``: family, r, z, optional seq, weight, powers, boundary
    - ``gpl``: letters (comma-separated), z
    - ``mpl``: depths, args (both comma-separated)
    - ``closed``: id and one parameter among x, X, z, tau, w, nu, param

    :param kind: One of `EVAL_KINDS`
    :param args: Parsed ``key=value`` pairs
    :return: The evaluation
    :raises ParseError: For unknown kinds, keys or malformed literals
    """
    kind = kind.lower()
    if kind == "series":
        return sum_family(_series_spec(args))
    if kind == "gpl":
        letters = parse_letters(_require(args, "letters"))
        return gpl_eval(GplWord(tuple(letters), parse_complex(_require(args, "z"))))
    if kind == "mpl":
        depths = parse_int_list(_require(args, "depths"))
        values = parse_letters(_require(args, "args"))
        return mpl_eval(MplSpec(tuple(depths), tuple(values)))
    if kind == "closed":
        entry = get_identity(_require(args, "id"))
        keys = [key for key in _PARAM_KEYS if key in args]
        if len(keys) != 1:
            raise ParseError(f"closed needs exactly one parameter among {', '.join(_PARAM_KEYS)}")
        key = keys[0]
        if key == "nu":
            param = complex(float(parse_rational(args[key])))
        else:
            param = parse_complex(args[key])
        value = closed_eval(entry.identity, param)
        return EvalResult(value, EPS * max(1.0, abs(value)), 1, Method.CLOSED)
    raise ParseError(f"Unknown eval kind {kind!r}; choose from {', '.join(EVAL_KINDS)}")


def parse_key_values(items: Sequence[str]) -> Dict[str, str]:
    """Split ``key=value`` tokens; keys are kept as written."""
    pairs: Dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseError(f"Expected key=value, got {item!r}")
        pairs[key.strip()] = value.strip()
    return pairs

"""
.. include:: ../../README.md
"""

__version__ = "0.1.0"
"""
### `__version__`

**The version of the invbinom library.**
- Schema: `MAJOR.MINOR.PATCH`
- Written into every verification report as `tool_version`
"""

from .binom import (
    Family,
    IntegralRep,
    Numerator,
    SumSpec,
    Weighting,
    hprod_gf,
    iter_terms,
    sum_family,
    sum_family_with_integral,
    term_closed,
    term_oracle_integral,
)
from .closedform import IdentityId, closed_eval, deriv_relation_check, get_identity, lhs_eval
from .exceptions import (
    BranchCutError,
    BudgetExceededError,
    ConfigurationError,
    DivergentWordError,
    DomainError,
    GplError,
    InvBinomException,
    LetterOnPathError,
    NoSignChangeError,
    NonConvergedError,
    NotAbsConvergentError,
    NumericsError,
    ParseError,
    TailUnboundedError,
    UnstableExtrapolationError,
)
from .gpl import GplWord, MplSpec, gpl, gpl_eval, mpl, mpl_eval, mpl_series_oracle, shuffle_check
from .harness import Report, SuiteConfig, VerificationRecord, eval_cmd, run_suite, write_report
from .numkit import EvalResult, Method, TailModel, adaptive_quad, levin_accelerate, solve_bracketed, sum_series
from .specfun import c_const, harmonic, li_n, q_of, r_frak, solve_x_from_z3, solve_x_from_z4, tau_pm, xi
from .utils import get_logger

# Define public API for documentation tools
__all__ = [
    # Numerics
    "EvalResult",
    "Method",
    "TailModel",
    "adaptive_quad",
    "sum_series",
    "levin_accelerate",
    "solve_bracketed",
    # Special functions
    "harmonic",
    "c_const",
    "q_of",
    "tau_pm",
    "xi",
    "r_frak",
    "li_n",
    "solve_x_from_z3",
    "solve_x_from_z4",
    # Polylogarithms
    "GplWord",
    "MplSpec",
    "gpl",
    "gpl_eval",
    "mpl",
    "mpl_eval",
    "mpl_series_oracle",
    "shuffle_check",
    # Series
    "Family",
    "Weighting",
    "Numerator",
    "SumSpec",
    "IntegralRep",
    "iter_terms",
    "sum_family",
    "sum_family_with_integral",
    "hprod_gf",
    "term_closed",
    "term_oracle_integral",
    # Identities
    "IdentityId",
    "closed_eval",
    "lhs_eval",
    "get_identity",
    "deriv_relation_check",
    # Verification
    "SuiteConfig",
    "VerificationRecord",
    "Report",
    "run_suite",
    "write_report",
    "eval_cmd",
    # Exception classes
    "InvBinomException",
    "NumericsError",
    "NonConvergedError",
    "TailUnboundedError",
    "BudgetExceededError",
    "UnstableExtrapolationError",
    "NoSignChangeError",
    "DomainError",
    "BranchCutError",
    "GplError",
    "DivergentWordError",
    "LetterOnPathError",
    "NotAbsConvergentError",
    "ConfigurationError",
    "ParseError",
    "get_logger",
    # Package metadata
    "__version__",
]

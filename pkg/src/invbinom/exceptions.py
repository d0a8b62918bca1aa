"""
Custom exception classes for the invbinom library.

This module defines the exception hierarchy used throughout invbinom. Every
class carries a short ``code`` tag that the verification harness copies into
its reports, so a failed record can be classified without parsing messages.
"""


class InvBinomException(Exception):
    """Base exception for invbinom library."""

    code = "ERROR"


class NumericsError(InvBinomException):
    """Raised when a numerical kernel cannot deliver a trustworthy value."""

    code = "NUMERICS"


class NonConvergedError(NumericsError):
    """Raised when quadrature misses its tolerance within the node budget."""

    code = "NON_CONVERGED"


class TailUnboundedError(NumericsError):
    """Raised when a declared tail model does not bound the remainder."""

    code = "TAIL_UNBOUNDED"


class BudgetExceededError(NumericsError):
    """Raised when a series exhausts its term budget."""

    code = "BUDGET_EXCEEDED"


class UnstableExtrapolationError(NumericsError):
    """Raised when successive extrapolation orders fail to settle."""

    code = "UNSTABLE"


class NoSignChangeError(NumericsError):
    """Raised when a root bracket does not straddle a sign change."""

    code = "NO_SIGN_CHANGE"


class DomainError(InvBinomException):
    """Raised when an argument lies outside a function's domain."""

    code = "DOMAIN"


class BranchCutError(DomainError):
    """Raised when an argument sits on a branch cut."""

    code = "BRANCH_CUT"


class GplError(InvBinomException):
    """Raised when a polylogarithm word cannot be evaluated."""

    code = "GPL"


class DivergentWordError(GplError):
    """Raised for words whose iterated integral diverges."""

    code = "DIVERGENT_WORD"


class LetterOnPathError(GplError):
    """Raised when a letter lies on the integration segment."""

    code = "LETTER_ON_PATH"


class NotAbsConvergentError(GplError):
    """Raised when a nested series lies outside its absolute-convergence region."""

    code = "NOT_ABS_CONVERGENT"


class ConfigurationError(InvBinomException):
    """Raised when configuration is invalid."""

    code = "CONFIG_INVALID"


class ParseError(InvBinomException):
    """Raised when command-line input cannot be parsed."""

    code = "PARSE"

"""Exception taxonomy.

Every failure mode that a caller can act on gets its own class.  Anything
carrying numeric evidence (PropertyViolation, VerificationFailed) stores a
diagnostics dict so test harnesses can report margins instead of just a
message string.
"""

from __future__ import annotations


class UltragrowthError(Exception):
    """Base class for all package-specific errors."""


class NonPositive(UltragrowthError):
    """An input that must be strictly positive is not."""


class NonLogConvex(UltragrowthError):
    """Sequence fails log-convexity (quotients not monotone)."""


class NonMonotoneQuotients(NonLogConvex):
    # same condition seen from the quotient side; kept as a subclass so
    # callers testing for NonLogConvex catch both
    pass


class TruncationTooShort(UltragrowthError):
    """Horizon K is below the documented minimum for the operation."""


class HorizonExceeded(UltragrowthError):
    """A search or block construction ran past index K without terminating."""


class InsufficientRows(UltragrowthError):
    """A quantified matrix condition needs more ladder rows than supplied."""


class OutOfTrustedRange(UltragrowthError):
    """Evaluation point lies beyond the range the truncation supports."""


class Unbounded(UltragrowthError):
    """A supremum that must be finite is +inf at this truncation."""


class NoDecayWithinK(UltragrowthError):
    """Series terms do not start decaying within the horizon."""


class SupAtBoundary(UltragrowthError):
    """Supremum attained at the search boundary; result untrusted."""


class NotSublinear(UltragrowthError):
    """Weight function grows at least linearly where o(t) is required."""


class QuasianalyticWeight(UltragrowthError):
    """Operation requires a non-quasianalytic weight."""


class TailUnbounded(UltragrowthError):
    """No tail model available and the tail contribution cannot be bounded."""


class QuadratureFailure(UltragrowthError):
    """Adaptive quadrature could not reach the requested tolerance in budget."""


class DerivativeOrderExceeded(UltragrowthError):
    """Requested derivative order above what the representation supports."""


class HypothesisNotMet(UltragrowthError):
    """A precondition of the checked statement fails, so the check is void."""


class JetNotInClass(UltragrowthError):
    """The jet fails the membership evidence required by the construction."""


class SelectionStalls(UltragrowthError):
    """Greedy index selection cannot make progress at the current horizon."""


class PropertyViolation(UltragrowthError):
    """A certified invariant fails; carries numeric diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class VerificationFailed(UltragrowthError):
    """A postcondition check on a constructed object fails."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class WitnessMissing(UltragrowthError):
    """An existential quantifier found no witness within the search range."""

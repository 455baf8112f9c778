"""Exceptions shared across the package.

Every error here signals either a caller mistake (bad precondition) or an
internal consistency failure that must abort the computation; nothing is
ever silently rounded or truncated away.
"""


class WallxError(Exception):
    """Base class for all package errors."""


class NotRational(WallxError):
    """A cyclotomic value that was expected to be rational has a nonzero
    root-of-unity component.  Signals a bug in a cancellation pipeline."""


class ZeroLeading(WallxError):
    """Division or logarithmic derivative by a series that is zero through
    its whole valid range."""


class NonPositiveValuation(WallxError):
    """Series exponential applied to a series with a term at exponent <= 0."""


class BeyondTruncation(WallxError):
    """A coefficient beyond the tracked valid range was requested.  The
    caller must rebuild the pipeline with a larger truncation."""


class ConstantPartPresent(WallxError):
    """Multivariate exponential applied to an argument with a pure-q
    constant term (all variable exponents zero)."""


class UnboundedSearch(WallxError):
    """Wall enumeration endpoints fail to bound the search box."""


class NonIntegral(WallxError):
    """A sign exponent that must be an integer came out fractional.
    Signals a sign-pipeline bug or violated preconditions."""

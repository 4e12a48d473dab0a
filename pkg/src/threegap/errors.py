"""Exception types shared across the package."""


class ThreeGapError(Exception):
    """Base class for all package errors."""


class InvalidInput(ThreeGapError, ValueError):
    pass


class RationalValue(ThreeGapError, ValueError):
    """The value is rational, so it has no infinite continued fraction."""


class UnsupportedComparison(ThreeGapError, TypeError):
    """Comparison would need two distinct square-root radicals."""


class InsufficientDepth(ThreeGapError):
    """Not enough partial quotients to reach the requested width."""


class PrecisionExhausted(ThreeGapError):
    """Interval refinement hit the precision cap before deciding."""


class AmbiguousComparison(ThreeGapError):
    """Two intervals overlap, so their order is not certified."""


class ConsistencyError(ThreeGapError, AssertionError):
    """An internal postcondition failed."""

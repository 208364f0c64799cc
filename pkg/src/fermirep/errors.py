"""Exception types shared across the package.

All of them subclass ValueError so callers that only care about "bad
input" can catch a single type, while tests can pin down the precise
failure mode.
"""


class CapacityError(ValueError):
    """Mode count outside the configured capacity."""


class ClosureError(ValueError):
    """A commutator falls outside the span of the generator set."""


class DependenceError(ValueError):
    """Generator matrices are linearly dependent."""


class ValidationError(ValueError):
    """Input violates a structural requirement of a construction."""


class DegeneracyError(ValueError):
    """Sector pair (m, n - m) coincides where distinct sectors are required."""

"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Two diagrams of different homology dimensions were compared."""


class InvariantViolationError(RuntimeError):
    """A structural invariant of an input object does not hold."""


class InternalConsistencyError(RuntimeError):
    """Two internal computations of the same quantity disagree."""

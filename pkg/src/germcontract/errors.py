"""Exception types shared across the package."""


class SeriesParseError(ValueError):
    """Malformed series/polynomial text.  Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PreconditionError(ValueError):
    """Input violates a documented precondition of an operation."""


class InvariantViolationError(RuntimeError):
    """An internal structural invariant failed.

    These guard the places where the algorithms rely on non-obvious facts
    (lattice membership of absorbed exponents, descent of degrees, witness
    exponent ordering, ...).  Raising instead of asserting keeps the full
    state dump attached to the error even under ``python -O``.
    """

    def __init__(self, message: str, **state):
        if state:
            dump = "; ".join(f"{k}={v!r}" for k, v in state.items())
            message = f"{message} [{dump}]"
        super().__init__(message)
        self.state = state

class InputError(ValueError):
    """A caller-supplied argument is outside the documented domain."""


class RangeError(InputError):
    """A position or window falls outside the host word."""


class InvariantViolation(RuntimeError):
    """An internal guarantee failed; indicates a bug, not bad input."""

class DomainError(ValueError):
    """Input outside the domain of an operation (e.g. n = 0, an all-zero word)."""


class InvariantViolation(RuntimeError):
    """A structural check disagreed with a closed form or a proven law."""

"""Exception hierarchy shared by all modules."""


class ExactRealError(Exception):
    """Base class for errors raised by exactreal."""


class ResourceLimitError(ExactRealError):
    """A configured size or iteration cap was exceeded."""


class DomainError(ExactRealError, ValueError):
    """An argument lies outside the domain of an operation."""


class WitnessNotFound(ExactRealError):
    """Bounded witness search gave up.

    This does not refute the inequality; it only says no witness exists
    up to ``n_max``.
    """

    def __init__(self, n_max: int, what: str = "apartness"):
        self.n_max = n_max
        super().__init__(f"no {what} witness found with n <= {n_max}")


class InvalidWitness(ExactRealError):
    """A supplied positivity witness is falsified by direct evaluation."""

"""Exception types shared across the package."""


class HessBettiError(Exception):
    """Base class for all errors raised by hessbetti."""


class InvalidInput(HessBettiError, ValueError):
    """Malformed or out-of-range user input (type label, subset, argument string)."""


class ClosureViolation(InvalidInput):
    """A candidate Hessenberg space fails the Borel-stability condition.

    ``witness`` is the triple ``(gamma, alpha, gamma + alpha)`` of root
    indices that breaks closure.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(HessBettiError):
    """A computation would exceed a configured size cap."""


class InvariantViolation(HessBettiError, AssertionError):
    """A mathematical invariant that must hold was found to fail.

    Raised only when the implementation disagrees with a proven statement,
    so it always indicates a bug.
    """

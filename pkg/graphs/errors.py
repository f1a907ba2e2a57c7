# graphs/errors.py

"""Exception hierarchy shared by every package in the project."""


class MinorsError(Exception):
    """Base class for all project errors."""


class GraphFormatError(MinorsError):
    """Raised when a graph text file violates the edge-list format."""


class ConfigError(MinorsError):
    """Raised for an unparseable or inconsistent experiment configuration."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class BudgetExceededError(MinorsError):
    """Raised when an exhaustive computation would exceed its work budget."""

    def __init__(self, what: str, estimate: int, budget: int):
        super().__init__(
            f"{what}: estimated work {estimate} exceeds budget {budget}"
        )
        self.estimate = estimate
        self.budget = budget


class FeasibilityError(MinorsError):
    """Raised when a desk-scale guard (e.g. host size cap) is violated."""


class RetriesExhaustedError(MinorsError):
    """Raised when construct_g0 runs out of resampling attempts.

    The best candidate seen so far is attached so callers can still report it.
    """

    def __init__(self, message: str, best_graph=None, best_verdict=None, attempts: int = 0):
        super().__init__(message)
        self.best_graph = best_graph
        self.best_verdict = best_verdict
        self.attempts = attempts

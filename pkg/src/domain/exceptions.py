# src/domain/exceptions.py


class ParameterError(ValueError):
    """Raised when an operation is called outside its documented domain."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration or search would exceed a configured limit."""


class SuiteFailure(RuntimeError):
    """Raised at the command boundary when a verification report contains failures."""

    def __init__(self, suite: str, failed: int):
        super().__init__(f"Suite '{suite}' has {failed} failed assertion(s).")
        self.suite = suite
        self.failed = failed

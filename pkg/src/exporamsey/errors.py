"""Exception hierarchy shared by all workbench modules."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WorkbenchError, ValueError):
    """An input violates a mathematical precondition (wrong domain)."""


class CapacityError(WorkbenchError):
    """A value or search exceeds a configured size/budget cap."""


class OracleRangeError(WorkbenchError):
    """A membership query fell outside a set oracle's decidable window."""

    def __init__(self, value, message: str | None = None):
        self.value = value
        super().__init__(message or f"membership undecidable for {value}")


class RuleSyntaxError(DomainError):
    """Coloring-rule source failed to parse; `position` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")


class RuleEvaluationError(WorkbenchError):
    """A coloring rule hit an evaluation error (division by zero, ilog2(0), ...)."""

    def __init__(self, message: str, n: int | None = None):
        self.n = n
        if n is not None:
            message = f"rule evaluation failed at n={n}: {message}"
        super().__init__(message)

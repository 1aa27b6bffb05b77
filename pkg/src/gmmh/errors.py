"""Exception types raised across the package."""


class GMMHError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(GMMHError, ValueError):
    pass


class BudgetExceededError(GMMHError):
    """An exhaustive enumeration would exceed the caller's budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} steps, budget is {budget}")


class KeyExhaustedError(GMMHError):
    """Every one-time pad of a MAC key has been used."""


class KeyFileError(GMMHError, ValueError):
    """Malformed key/message text; carries 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")

"""Error taxonomy shared by the library and the CLI exit codes."""


class HypothesisViolation(ValueError):
    """An operation's stated precondition does not hold for the input."""


class VerificationError(RuntimeError):
    """A construct-then-verify step failed; the produced object is invalid."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran out of its configured resource budget."""

"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class ToolkitError(Exception):
    exit_code = 1


class DomainError(ToolkitError, ValueError):
    """Argument outside the mathematical domain of an operation."""

    exit_code = 2


class NonConvergenceError(ToolkitError, ArithmeticError):
    """A series or iteration hit its budget before meeting its tolerance."""

    exit_code = 3


class VerificationError(ToolkitError):
    exit_code = 4


class LossOfSignificanceWarning(RuntimeWarning):
    """Rounding in an alternating sum may exceed the requested tolerance."""

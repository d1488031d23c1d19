"""Exception hierarchy shared by the library and the command line."""


class TruncExpError(Exception):
    """Base class for every error raised by truncexp."""

    exit_code = 1


class ValidationError(TruncExpError, ValueError):
    """Input data (sample, file, grid, config) violates its invariants."""

    exit_code = 3


class DomainError(TruncExpError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""

    exit_code = 3


class UndefinedMethodError(ValidationError):
    """The requested inference method has no definition for this sample."""


class NumericError(TruncExpError, ArithmeticError):
    """A numerical procedure could not produce a trustworthy value."""

    exit_code = 4


class NoRootError(NumericError):
    """Bracket expansion could not enclose the requested target value."""


class ContractError(NumericError):
    """A function passed to a monotone solver is not decreasing."""


class SimulationError(NumericError):
    """A Monte Carlo replication failed; the message names its seed offset."""

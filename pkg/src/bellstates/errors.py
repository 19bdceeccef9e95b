"""Exception hierarchy shared by every module of the package."""


class BellStatesError(Exception):
    """Base class for all errors raised by :mod:`bellstates`."""


class InvalidParameters(BellStatesError, ValueError):
    """Arguments outside the domain of an operation."""


class UnsupportedError(BellStatesError, ValueError):
    """A closed form was requested for a case it does not cover."""


class ResourceGuardError(BellStatesError):
    """The request exceeds the configured desk-scale limits."""


class ConvergenceError(BellStatesError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""


class TailBoundError(ConvergenceError):
    """The quadrature cutoff leaves too much mass in the tail."""

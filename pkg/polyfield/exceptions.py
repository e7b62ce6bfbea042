class PoincareError(Exception):
    """Base class for errors raised by the toolkit"""


class DomainError(PoincareError, ValueError):
    """An operation was called outside of its domain"""


class CompactificationError(PoincareError):
    """A monomial does not fit under the degree used for the charts"""


class NumericalError(PoincareError, RuntimeError):
    """A numerical method failed to deliver the requested accuracy"""


class EigenSolveError(NumericalError):
    """Inverse iteration stagnated for an eigenpair"""

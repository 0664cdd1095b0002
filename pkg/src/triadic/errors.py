"""Exception types shared across the package."""


class TriadicError(Exception):
    """Base class for errors raised by this package."""


class DataError(TriadicError, ValueError):
    """Malformed input data or an invalid reference to actors/events."""


class EmptyCensusError(DataError):
    """A census was requested on a graph with fewer than three actors."""


class UndefinedStatistic(TriadicError, ArithmeticError):
    """A ratio statistic has an empty denominator (0/0).

    Kept distinct from a value of zero: a clustering coefficient with no
    wedges is undefined, not zero.
    """


class ConvergenceError(TriadicError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message, iterations):
        super().__init__(message)
        self.iterations = iterations

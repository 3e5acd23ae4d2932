"""Exception hierarchy shared by every fvslab module."""


class FvsLabError(Exception):
    """Base class for all library errors."""


class DomainError(FvsLabError, ValueError):
    """An input violates the documented precondition of an operation."""


class ResourceError(FvsLabError):
    """A configured cap (size, time) would be exceeded.

    ``best`` carries any partial answer the operation had when it gave up,
    e.g. the best feedback vertex set found before a timeout.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class IntegrityError(FvsLabError):
    """A computed result contradicts a guarantee the algorithm relies on."""

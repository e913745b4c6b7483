"""Exceptions raised by lattimax.

Every error is a ``ValueError`` so callers can keep catching the usual type,
the subclasses tell apart what exactly went wrong.
"""

from typing import Any, Optional


class LattimaxError(ValueError):
    """Base class for all errors of the package"""


class DomainError(LattimaxError):
    """A vector, a coefficient or a count is outside of the allowed domain

    Examples
    --------
    >>> raise DomainError("entry 1 of x is -1, but it should be non-negative")
    Traceback (most recent call last):
    ...
    lattimax.errors.DomainError: entry 1 of x is -1, but it should be non-negative
    """


class PreconditionError(LattimaxError):
    """A documented precondition of an algorithm is violated (e.g. the start point isn't feasible)"""


class CapacityError(LattimaxError):
    """The request is too big to be processed exactly at desk scale

    Parameters
    ----------
    message: str
        human readable explanation
    estimate: int
        estimated size of the work (points, subsets, terms)
    limit: int
        the limit which was exceeded
    """

    def __init__(self, message: str, *, estimate: int, limit: int):
        super().__init__(f"{message} (estimate {estimate}, limit {limit})")
        self.estimate = estimate
        self.limit = limit


class ConfigError(LattimaxError):
    """Invalid solver or harness configuration

    Parameters
    ----------
    message: str
        human readable explanation
    line, column: Optional[int]
        1-based position in the configuration file, if known
    path: Optional[str]
        dotted path of the offending entry, e.g. ``instances[2].weights``
    """

    def __init__(
        self,
        message: str,
        *,
        line: Optional[int] = None,
        column: Optional[int] = None,
        path: Optional[str] = None,
    ):
        location = []
        if path is not None:
            location.append(path)
        if line is not None:
            location.append(f"line {line}, column {column}")
        if location:
            message = f"{', '.join(location)}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path


class ConstructionError(LattimaxError):
    """An instance family refuses its input, ``witness`` holds the offending tuple"""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message if witness is None else f"{message}, witness: {witness}")
        self.witness = witness

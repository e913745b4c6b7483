"""Evaluation oracles.

A :class:`ValueOracle` is the only way the solvers see the objective. It knows its box ``c``,
counts every evaluation and refuses points outside ``[0, c]``.
"""

from abc import ABC, abstractmethod
import threading
from typing import Callable, Optional

import numpy as np

from lattimax._helpers.validate import _check_same_dimension
from lattimax.errors import DomainError
from lattimax.lattice.types import LatticePoint

NORMALIZATION_TOLERANCE = 1e-9


class ValueOracle(ABC):
    """Black-box function ``f: [0, c] ∩ Z^E -> R+`` with ``f(0) = 0``

    Subclasses implement :meth:`_evaluate`; :meth:`eval` validates the input and counts the call.
    ``eval`` is safe to call from several threads as long as ``_evaluate`` is a pure function.

    Parameters
    ----------
    box: LatticePoint
        the cap ``c``, the oracle is defined for every ``0 <= x <= c``
    """

    def __init__(self, box):
        self._box = box if isinstance(box, LatticePoint) else LatticePoint(box)
        self._calls = 0
        self._lock = threading.Lock()

    @property
    def box(self) -> LatticePoint:
        return self._box

    @property
    def n(self) -> int:
        return self._box.n

    @property
    def call_count(self) -> int:
        """Number of evaluations since construction"""
        return self._calls

    def eval(self, x: LatticePoint) -> float:
        """Returns ``f(x)``

        Raises
        ------
        DomainError
            if ``x`` has another dimension or isn't inside the box
        """
        self.check_in_box(x)
        with self._lock:
            self._calls += 1
        return float(self._evaluate(x))

    __call__ = eval

    def check_in_box(self, x: LatticePoint):
        if not isinstance(x, LatticePoint):
            raise DomainError(f"oracle accepts LatticePoint only, but {type(x).__name__} was given")
        _check_same_dimension(x, self._box)
        outside = np.flatnonzero(x.array > self._box.array)
        if outside.size:
            e = int(outside[0])
            raise DomainError(f"entry {e} of {x} exceeds the box {self._box}")

    @abstractmethod
    def _evaluate(self, x: LatticePoint) -> float:
        """Value at a validated in-box point"""

    def __repr__(self):
        return f"{type(self).__name__}(box={self._box.to_tuple()})"


class FunctionOracle(ValueOracle):
    """Oracle wrapping a python callable

    Examples
    --------
    >>> f = FunctionOracle(lambda x: 2 * min(x[0], 1) + min(x[1], 3), box=[1, 3])
    >>> f(LatticePoint([1, 2]))
    4.0
    >>> f.call_count
    1
    """

    def __init__(self, fn: Callable[[LatticePoint], float], box):
        super().__init__(box)
        self._fn = fn
        zero = float(fn(LatticePoint.zeros(self.n)))
        if abs(zero) > NORMALIZATION_TOLERANCE:
            raise DomainError(f"oracle should be normalized, f(0) = 0, but f(0) = {zero}")

    def _evaluate(self, x: LatticePoint) -> float:
        return self._fn(x)


class TableOracle(ValueOracle):
    """Oracle defined by an explicit table of values, ``table[x]`` for every ``x <= c``

    The box is ``table.shape - 1``.

    >>> f = TableOracle([[0, 1], [1, 1.5]])
    >>> f.box, f(LatticePoint([1, 1]))
    (LatticePoint([1, 1]), 1.5)
    """

    def __init__(self, table):
        values = np.array(table, dtype=np.float64)
        if values.ndim == 0 or min(values.shape) < 1:
            raise DomainError(f"table should have an entry in every dimension, but its shape is {values.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("table should contain finite values only")
        if abs(values.flat[0]) > NORMALIZATION_TOLERANCE:
            raise DomainError(f"table should be normalized, f(0) = 0, but f(0) = {values.flat[0]}")
        super().__init__([s - 1 for s in values.shape])
        values.setflags(write=False)
        self._table = values

    @property
    def table(self) -> np.ndarray:
        return self._table

    def _evaluate(self, x: LatticePoint) -> float:
        return self._table[tuple(x.array)]


class ConditionedOracle(ValueOracle):
    """The view ``f(· | y) = f(· + y) - f(y)`` with box ``c - y``

    Every evaluation is also counted by the base oracle. ``f(y)`` is evaluated once at
    construction unless the caller already knows it and passes ``base_value``.

    >>> f = FunctionOracle(lambda x: min(x[0] + x[1], 3), box=[2, 2])
    >>> g = ConditionedOracle(f, LatticePoint([1, 1]))
    >>> g.box, g(LatticePoint([1, 0])), f.call_count
    (LatticePoint([1, 1]), 1.0, 2)
    """

    def __init__(self, base: ValueOracle, y: LatticePoint, base_value: Optional[float] = None):
        base.check_in_box(y)
        super().__init__(base.box - y)
        self._base = base
        self._y = y
        self._fy = base.eval(y) if base_value is None else float(base_value)

    @property
    def base(self) -> ValueOracle:
        return self._base

    @property
    def anchor(self) -> LatticePoint:
        return self._y

    def _evaluate(self, x: LatticePoint) -> float:
        return self._base.eval(x + self._y) - self._fy


def marginal(f: ValueOracle, delta: LatticePoint, y: Optional[LatticePoint] = None) -> float:
    """``f(delta | y) = f(delta + y) - f(y)``

    Costs two oracle calls, or none when ``delta`` is zero.

    Examples
    --------
    >>> f = FunctionOracle(lambda x: 2 * min(x[0], 1) + min(x[1], 3), box=[3, 3])
    >>> a = LatticePoint.unit(2, 0)
    >>> marginal(f, a, LatticePoint.zeros(2)), marginal(f, a, a)
    (2.0, 0.0)
    """
    if y is None:
        y = LatticePoint.zeros(f.n)
    f.check_in_box(y)
    top = y + delta
    f.check_in_box(top)
    if delta.is_zero():
        return 0.0
    return f.eval(top) - f.eval(y)

"""Decreasing threshold greedy under a cardinality constraint ``0 <= x <= c, x(E) <= r``.

Two variants are provided. :func:`maximize_dr_cardinality` relies on DR-submodularity, so the
step ``k`` along an element is found by a plain binary search.
:func:`maximize_lattice_cardinality` only needs lattice submodularity and guesses the value of the
step with :func:`binary_search_lattice`.
"""

from dataclasses import dataclass
from functools import lru_cache
import logging
from typing import Optional, Tuple

from lattimax._helpers.validate import _check_element, _check_non_negative_int
from lattimax.errors import DomainError, PreconditionError
from lattimax.lattice.oracle import ConditionedOracle, ValueOracle
from lattimax.lattice.types import LatticePoint
from lattimax.solver.config import GreedyTrace, SolverConfig, thresholds
from lattimax.solver.search import first_true, last_true

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CardinalityConstraint:
    """Feasible region ``{x : 0 <= x <= cap, x(E) <= budget}``

    Examples
    --------
    >>> cst = CardinalityConstraint([1, 3], budget=2)
    >>> cst.is_feasible(LatticePoint([1, 1])), cst.is_feasible(LatticePoint([0, 3]))
    (True, False)
    """

    cap: LatticePoint
    budget: int

    def __post_init__(self):
        if not isinstance(self.cap, LatticePoint):
            object.__setattr__(self, "cap", LatticePoint(self.cap))
        _check_non_negative_int(self.budget, "budget")

    @property
    def n(self) -> int:
        return self.cap.n

    def is_feasible(self, x: LatticePoint) -> bool:
        return x <= self.cap and x.total() <= self.budget


def max_step_dr(f: ValueOracle, y: LatticePoint, e: int, k_max: int, theta: float) -> int:
    """Maximum ``k <= k_max`` with ``f(k chi_e | y) >= k theta``, 0 if no positive ``k`` qualifies

    For DR-submodular ``f`` the function ``k -> f(k chi_e | y) - k theta`` is concave and zero at 0,
    so the predicate holds on a prefix and binary search finds its end with
    ``O(log k_max)`` evaluations. For other oracles the returned ``k`` still satisfies the predicate.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: 2 * min(x[0], 1), box=[5])
    >>> max_step_dr(f, LatticePoint([0]), 0, k_max=5, theta=2), max_step_dr(f, LatticePoint([0]), 0, k_max=5, theta=2.5)
    (1, 0)
    """
    _check_element(e, f.n)
    _check_non_negative_int(k_max, "k_max")
    if theta <= 0:
        raise DomainError(f"theta should be positive, but it is {theta}")
    if k_max == 0:
        return 0
    k, _ = _max_step(f, y, f.eval(y), e, k_max, theta)
    return k


def _max_step(f: ValueOracle, y: LatticePoint, fy: float, e: int, k_max: int, theta: float) -> Tuple[int, float]:
    @lru_cache(maxsize=None)
    def value(k: int) -> float:
        return f.eval(y.add_units(e, k))

    k = last_true(lambda k: value(k) - fy >= k * theta, 0, k_max)
    return k, (value(k) if k else fy)


def maximize_dr_cardinality(
    f: ValueOracle, cst: CardinalityConstraint, cfg: SolverConfig
) -> Tuple[LatticePoint, GreedyTrace]:
    """Maximizes a monotone DR-submodular ``f`` under a cardinality constraint

    Thresholds start at ``d = max_e f(chi_e)`` and decrease by the factor ``1 - epsilon`` down to
    ``epsilon d / r``. In each round every element, in index order, is increased by the largest
    step whose average gain reaches the threshold. The result is a ``(1 - 1/e - epsilon)``
    approximation.

    Parameters
    ----------
    f: ValueOracle
        monotone DR-submodular objective, its box should contain ``cst.cap``
    cst: CardinalityConstraint
        cap ``c`` and budget ``r``
    cfg: SolverConfig
        the effective epsilon is used

    Returns
    -------
    Tuple[LatticePoint, GreedyTrace]
        feasible solution and accepted steps

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: 2 * min(x[0], 1) + min(x[1], 3), box=[1, 3])
    >>> y, trace = maximize_dr_cardinality(f, CardinalityConstraint([1, 3], budget=2), SolverConfig(0.1))
    >>> y, [(step.element, step.k) for step in trace.steps]
    (LatticePoint([1, 1]), [(0, 1), (1, 1)])
    """
    _check_constraint(f, cst)
    eps = cfg.effective_epsilon
    trace = GreedyTrace()
    y = LatticePoint.zeros(cst.n)
    r = cst.budget
    cap = cst.cap
    elements = [e for e in range(cst.n) if cap[e] > 0]
    if r == 0 or not elements:
        return y, trace
    d = max(f.eval(LatticePoint.unit(cst.n, e)) for e in elements)
    if d <= 0:
        return y, trace
    fy = 0.0
    for theta in thresholds(d, eps * d / r, eps):
        for e in elements:
            k_max = min(cap[e] - y[e], r - y.total())
            if k_max <= 0:
                continue
            k, value = _max_step(f, y, fy, e, k_max, theta)
            if k:
                trace.record(theta, e, k, value - fy)
                y = y.add_units(e, k)
                fy = value
        log.debug("theta %.6g: y=%s f(y)=%.6g", theta, y, fy)
        if y.total() == r:
            break
    return y, trace


def binary_search_lattice(
    g: ValueOracle, e: int, theta: float, k_max: int, epsilon: float
) -> Optional[int]:
    """Step ``k`` along ``e`` with ``g(k chi_e) >= (1 - epsilon) k theta`` or ``None`` (FAIL)

    ``g`` is usually the view ``f(· | y)``. The value of the step is guessed along the levels
    ``h = g(k_max chi_e) (1 - epsilon)^s`` down to ``(1 - epsilon) g(k_min chi_e)``, where
    ``k_min`` is the smallest step with positive value; for every level the smallest ``k`` reaching it
    is checked against the threshold.

    If some ``k* >= 1`` satisfies ``g(k* chi_e) >= k* theta`` the search doesn't fail.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> g = FunctionOracle(lambda x: -(-x[0] // 2), box=[10])
    >>> binary_search_lattice(g, 0, theta=0.4, k_max=10, epsilon=0.01)
    9
    >>> binary_search_lattice(FunctionOracle(lambda x: 0, box=[10]), 0, theta=0.4, k_max=10, epsilon=0.01) is None
    True
    """
    found = _binary_search_lattice(g, e, theta, k_max, epsilon)
    return None if found is None else found[0]


def _binary_search_lattice(g: ValueOracle, e: int, theta: float, k_max: int, epsilon: float):
    _check_element(e, g.n)
    _check_non_negative_int(k_max, "k_max")
    if theta <= 0:
        raise DomainError(f"theta should be positive, but it is {theta}")
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon should be in (0, 1), but it is {epsilon}")

    @lru_cache(maxsize=None)
    def value(k: int) -> float:
        return g.eval(LatticePoint.unit(g.n, e, k)) if k else 0.0

    k_min = first_true(lambda k: value(k) > 0, 0, k_max)
    if k_min is None:
        return None
    top = value(k_max)
    bottom = (1 - epsilon) * value(k_min)
    s = 0
    while True:
        h = top * (1 - epsilon) ** s
        if h < bottom:
            return None
        k = first_true(lambda k: value(k) >= h, k_min, k_max)
        if k is not None and value(k) >= (1 - epsilon) * k * theta:
            return k, value(k)
        s += 1


def maximize_lattice_cardinality(
    f: ValueOracle, cst: CardinalityConstraint, cfg: SolverConfig
) -> Tuple[LatticePoint, GreedyTrace]:
    """Maximizes a monotone lattice submodular ``f`` under a cardinality constraint

    Same threshold schedule as :func:`maximize_dr_cardinality`, but starting at
    ``d_max = max_e f(c(e) chi_e)`` and finding steps with :func:`binary_search_lattice` on
    ``f(· | y)``. The result is a ``(1 - 1/e - O(epsilon))`` approximation.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: 2 * min(x[0], 1) + min(x[1], 3), box=[1, 3])
    >>> maximize_lattice_cardinality(f, CardinalityConstraint([1, 3], budget=0), SolverConfig(0.1))[0]
    LatticePoint([0, 0])
    """
    _check_constraint(f, cst)
    eps = cfg.effective_epsilon
    trace = GreedyTrace()
    y = LatticePoint.zeros(cst.n)
    r = cst.budget
    cap = cst.cap
    elements = [e for e in range(cst.n) if cap[e] > 0]
    if r == 0 or not elements:
        return y, trace
    d_max = max(f.eval(LatticePoint.unit(cst.n, e, cap[e])) for e in elements)
    if d_max <= 0:
        return y, trace
    fy = 0.0
    view = ConditionedOracle(f, y, base_value=fy)
    for theta in thresholds(d_max, eps * d_max / r, eps):
        for e in elements:
            k_max = min(cap[e] - y[e], r - y.total())
            if k_max <= 0:
                continue
            found = _binary_search_lattice(view, e, theta, k_max, eps)
            if found is None:
                continue
            k, gain = found
            trace.record(theta, e, k, gain)
            y = y.add_units(e, k)
            fy += gain
            view = ConditionedOracle(f, y, base_value=fy)
        log.debug("theta %.6g: y=%s f(y)=%.6g", theta, y, fy)
        if y.total() == r:
            break
    return y, trace


def _check_constraint(f: ValueOracle, cst: CardinalityConstraint):
    if f.n != cst.n:
        raise PreconditionError(f"oracle has {f.n} elements, but the constraint has {cst.n}")
    if not cst.cap <= f.box:
        raise PreconditionError(f"cap {cst.cap} exceeds the oracle box {f.box}")

"""Maximization of a monotone DR-submodular function under a knapsack constraint ``w^T x <= 1, x <= c``.

:func:`maximize_knapsack` runs :func:`greedy_knapsack` from every initial solution found by
:func:`partial_enumeration` and keeps the best result.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
import itertools
import logging
import math
import time
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from lattimax._helpers.validate import _check_element, _check_non_negative
from lattimax.errors import DomainError, PreconditionError
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.types import LatticePoint
from lattimax.result import SolverReport
from lattimax.solver.cardinality import _max_step
from lattimax.solver.config import GreedyTrace, SolverConfig, thresholds
from lattimax.solver.search import first_true

log = logging.getLogger(__name__)

LOAD_TOLERANCE = 1e-9
ENUMERATED_ELEMENTS = 3
GUARANTEE_EPSILON = 1 - math.e / 3


@dataclass(frozen=True)
class KnapsackInstance:
    """Knapsack ``w^T x <= 1`` with per element caps ``0 <= x <= cap``, weights in ``(0, 1]``

    Examples
    --------
    >>> inst = KnapsackInstance([0.5, 0.25], cap=[2, 2])
    >>> inst.w_min, inst.load(LatticePoint([1, 2])), inst.is_feasible(LatticePoint([2, 1]))
    (0.25, 1.0, False)
    """

    weights: Tuple[float, ...]
    cap: LatticePoint

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        for e, w in enumerate(weights):
            if not 0 < w <= 1:
                raise DomainError(f"weight of element {e} is {w}, but it should be in (0, 1]")
        object.__setattr__(self, "weights", weights)
        if not isinstance(self.cap, LatticePoint):
            object.__setattr__(self, "cap", LatticePoint(self.cap))
        if len(weights) != self.cap.n:
            raise DomainError(f"there are {len(weights)} weights, but cap has {self.cap.n} entries")

    @classmethod
    def from_budget(cls, raw_weights: Sequence[float], budget: float, cap) -> "KnapsackInstance":
        """Instance ``w' x <= B`` normalized to ``w = w' / B``

        >>> KnapsackInstance.from_budget([2, 5], budget=10, cap=[3, 1]).weights
        (0.2, 0.5)
        """
        raw = np.asarray(raw_weights, dtype=np.float64)
        _check_non_negative(raw, "raw weights")
        if budget <= 0:
            raise DomainError(f"budget should be positive, but it is {budget}")
        for e, w in enumerate(raw):
            if w == 0:
                raise DomainError(f"weight of element {e} is 0, but it should be positive")
            if w > budget:
                raise DomainError(f"weight of element {e} is {w}, it exceeds the budget {budget}")
        return cls(tuple(float(w) for w in raw / budget), cap)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def w_min(self) -> float:
        return min(self.weights)

    def load(self, x: LatticePoint) -> float:
        return x.dot(self.weights)

    def is_feasible(self, x: LatticePoint) -> bool:
        return x <= self.cap and self.load(x) <= 1 + LOAD_TOLERANCE


@dataclass(frozen=True)
class InitialSolutionSet:
    """Feasible starting points of support at most 3, without duplicates, in enumeration order"""

    solutions: Tuple[LatticePoint, ...]

    def __post_init__(self):
        assert len(set(self.solutions)) == len(self.solutions), "initial solutions should be distinct"
        assert all(len(x.support()) <= ENUMERATED_ELEMENTS for x in self.solutions)

    @classmethod
    def collect(cls, points: Iterable[LatticePoint], inst: KnapsackInstance) -> "InitialSolutionSet":
        return cls(tuple(x for x in dict.fromkeys(points) if inst.is_feasible(x)))

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def __contains__(self, x):
        return x in self.solutions


def greedy_knapsack(
    f: ValueOracle, inst: KnapsackInstance, x0: LatticePoint, cfg: SolverConfig
) -> Tuple[LatticePoint, GreedyTrace]:
    """Decreasing threshold greedy for the knapsack, started from ``x0``

    Thresholds start at ``d = max_e f(chi_e) / w(e)`` and go down to ``epsilon d w_min``. For every
    element the largest ``k <= u(e) - x(e)`` with ``f(k chi_e | x) >= k w(e) theta`` is tried; if it
    doesn't fit in the budget the ceiling is lowered to ``u(e) = x(e) + k - 1`` and the failed
    trial is recorded in the trace with ``accepted=False``.

    Raises
    ------
    PreconditionError
        if ``x0`` isn't feasible

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: 3.0 * x[0] + x[1], box=[2, 2])
    >>> inst = KnapsackInstance([0.5, 0.5], cap=[2, 2])
    >>> greedy_knapsack(f, inst, LatticePoint([0, 0]), SolverConfig(0.05))[0]
    LatticePoint([2, 0])
    """
    _check_instance(f, inst)
    if x0.n != inst.n or not inst.is_feasible(x0):
        raise PreconditionError(f"initial solution {x0} isn't feasible")
    eps = cfg.effective_epsilon
    trace = GreedyTrace()
    elements = [e for e in range(inst.n) if inst.cap[e] > 0]
    x = x0
    if not elements:
        return x, trace
    d = max(f.eval(LatticePoint.unit(inst.n, e)) / inst.weights[e] for e in elements)
    if d <= 0:
        return x, trace
    ceiling = inst.cap.array.copy()
    fx = f.eval(x)
    for theta in thresholds(d, eps * d * inst.w_min, eps):
        for e in elements:
            k_max = int(ceiling[e]) - x[e]
            if k_max <= 0:
                continue
            w = inst.weights[e]
            k, value = _max_step(f, x, fx, e, k_max, w * theta)
            if not k:
                continue
            if inst.load(x) + k * w <= 1 + LOAD_TOLERANCE:
                trace.record(theta, e, k, value - fx)
                x = x.add_units(e, k)
                fx = value
            else:
                ceiling[e] = x[e] + k - 1
                trace.record(theta, e, k, value - fx, accepted=False)
                log.debug("step %d along %d doesn't fit at %s, ceiling lowered to %d", k, e, x, ceiling[e])
        log.debug("theta %.6g: x=%s f(x)=%.6g", theta, x, fx)
    return x, trace


def increase_support(
    f: ValueOracle, inst: KnapsackInstance, e: int, Y: Iterable[LatticePoint], epsilon: float
) -> Tuple[LatticePoint, ...]:
    """Extends every ``y`` of ``Y`` along ``e`` to the geometric value levels of ``k -> f(k chi_e | y)``

    Levels ``h`` go from ``f(k_top chi_e | y)``, ``k_top = c(e) - y(e)``, down to
    ``(1 - epsilon) f(k_min chi_e | y)``, ``k_min`` being the smallest step with positive
    marginal; every level emits ``y + k chi_e`` for the smallest ``k`` reaching it.
    Points without positive marginal along ``e`` contribute nothing.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: min(x[0], 4), box=[6])
    >>> inst = KnapsackInstance([0.1], cap=[6])
    >>> increase_support(f, inst, 0, [LatticePoint([0])], 0.5)
    (LatticePoint([4]), LatticePoint([2]), LatticePoint([1]))
    """
    _check_element(e, inst.n)
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon should be in (0, 1), but it is {epsilon}")
    emitted: Dict[LatticePoint, None] = {}
    for y in Y:
        k_top = inst.cap[e] - y[e]
        if k_top <= 0:
            continue
        fy = f.eval(y)

        @lru_cache(maxsize=None)
        def gain(k: int) -> float:
            return f.eval(y.add_units(e, k)) - fy

        k_min = first_true(lambda k: gain(k) > 0, 1, k_top)
        if k_min is None:
            continue
        top = gain(k_top)
        bottom = (1 - epsilon) * gain(k_min)
        s = 0
        while (h := top * (1 - epsilon) ** s) >= bottom:
            k = first_true(lambda k: gain(k) >= h, k_min, k_top)
            emitted[y.add_units(e, k)] = None
            s += 1
    return tuple(emitted)


def partial_enumeration(f: ValueOracle, inst: KnapsackInstance, epsilon: float) -> InitialSolutionSet:
    """Initial solutions: :func:`increase_support` chained along every ordered tuple of at most 3 elements

    Tuples may repeat elements. Infeasible points are dropped after every extension, the
    extensions of a tuple prefix are shared by all its continuations. The zero vector, produced by
    the empty tuple, is always the first solution.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: min(x[0], 4), box=[6])
    >>> partial_enumeration(f, KnapsackInstance([0.3], cap=[6]), 0.5).solutions
    (LatticePoint([0]), LatticePoint([2]), LatticePoint([1]))
    """
    _check_instance(f, inst)
    stages: Dict[Tuple[int, ...], Tuple[LatticePoint, ...]] = {(): (LatticePoint.zeros(inst.n),)}
    found: List[LatticePoint] = list(stages[()])
    for length in range(1, min(ENUMERATED_ELEMENTS, inst.n) + 1):
        for elements in itertools.product(range(inst.n), repeat=length):
            previous = stages[elements[:-1]]
            extended = increase_support(f, inst, elements[-1], previous, epsilon) if previous else ()
            stages[elements] = tuple(x for x in extended if inst.is_feasible(x))
            found.extend(stages[elements])
    solutions = InitialSolutionSet.collect(found, inst)
    log.debug("partial enumeration found %d initial solutions", len(solutions))
    return solutions


def maximize_knapsack(
    f: ValueOracle, inst: KnapsackInstance, cfg: SolverConfig, workers: int = 1
) -> Tuple[LatticePoint, SolverReport]:
    """Best greedy completion over all enumerated initial solutions

    ``f(x) >= (1 - 1/e - O(epsilon)) OPT`` for ``0 < epsilon < 1 - e/3``, larger accuracy parameters
    are accepted with a warning. Greedy runs are independent and use ``workers`` threads; ties are
    won by the earliest initial solution.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: 3.0 * x[0] + x[1], box=[2, 2])
    >>> x, report = maximize_knapsack(f, KnapsackInstance([0.5, 0.5], cap=[2, 2]), SolverConfig(0.05))
    >>> x, report.value
    (LatticePoint([2, 0]), 6.0)
    """
    eps = cfg.effective_epsilon
    if eps >= GUARANTEE_EPSILON:
        log.warning("epsilon %s isn't below 1 - e/3, the approximation guarantee doesn't apply", eps)
    _check_instance(f, inst)
    start_calls = f.call_count
    started = time.perf_counter()
    initial = partial_enumeration(f, inst, eps)

    def complete(x0: LatticePoint):
        x, trace = greedy_knapsack(f, inst, x0, cfg)
        return x, f.eval(x), trace

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            runs = list(executor.map(complete, initial))
    else:
        runs = [complete(x0) for x0 in initial]
    best = runs[0]
    for run in runs[1:]:
        if run[1] > best[1]:
            best = run
    solution, value, trace = best
    report = SolverReport(
        algorithm="knapsack",
        epsilon=eps,
        seed=cfg.seed,
        solution=solution,
        value=value,
        oracle_calls=f.call_count - start_calls,
        wall_time_ms=round((time.perf_counter() - started) * 1000),
        trace=trace,
    )
    return solution, report


def _check_instance(f: ValueOracle, inst: KnapsackInstance):
    if f.n != inst.n:
        raise PreconditionError(f"oracle has {f.n} elements, but the instance has {inst.n}")
    if not inst.cap <= f.box:
        raise PreconditionError(f"cap {inst.cap} exceeds the oracle box {f.box}")

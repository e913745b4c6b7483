"""Exact optimum over small feasible regions by enumeration.

Every constraint of the package is downward closed, so a depth-first enumeration assigning the
coordinates one by one in increasing order can stop increasing a coordinate as soon as the partial
point leaves the region.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import singledispatch
import logging
import math
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from lattimax.errors import CapacityError, DomainError, PreconditionError
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.operations import box_points
from lattimax.lattice.types import LatticePoint
from lattimax.solver.cardinality import CardinalityConstraint
from lattimax.solver.knapsack import LOAD_TOLERANCE, KnapsackInstance
from lattimax.solver.polymatroid.oracle import PolymatroidOracle

log = logging.getLogger(__name__)

POINT_LIMIT = 10**7
RATIO_SLACK = 1e-9


class ExactResult(NamedTuple):
    opt_value: float
    argmax: LatticePoint
    points_enumerated: int


class Region(NamedTuple):
    """Feasible region inside the box ``[0, cap]``, ``estimate`` bounds the number of its points"""

    cap: LatticePoint
    contains: Callable[[LatticePoint], bool]
    estimate: int


@singledispatch
def feasible_region(constraint, f: ValueOracle) -> Region:
    raise DomainError(f"unsupported constraint {type(constraint).__name__}")


@feasible_region.register
def _(constraint: CardinalityConstraint, f: ValueOracle) -> Region:
    _check_cap(constraint.cap, f)
    counts = np.ones(1)
    for c in constraint.cap:
        counts = np.convolve(counts, np.ones(c + 1))[: constraint.budget + 1]
    return Region(constraint.cap, constraint.is_feasible, int(round(counts.sum())))


@feasible_region.register
def _(constraint: PolymatroidOracle, f: ValueOracle) -> Region:
    if constraint.n != f.n:
        raise PreconditionError(f"oracle has {f.n} elements, but the polymatroid has {constraint.n}")
    singletons = [constraint.rank((e,)) for e in range(f.n)]
    cap = LatticePoint(np.minimum(f.box.array, singletons))
    return Region(cap, constraint.member, _box_estimate(cap))


@feasible_region.register
def _(constraint: KnapsackInstance, f: ValueOracle) -> Region:
    _check_cap(constraint.cap, f)
    fitting = [math.floor((1 + LOAD_TOLERANCE) / w) for w in constraint.weights]
    cap = LatticePoint(np.minimum(constraint.cap.array, fitting))
    return Region(cap, constraint.is_feasible, _box_estimate(cap))


def brute_force_opt(
    f: ValueOracle, constraint, limit: int = POINT_LIMIT, prune: bool = True, workers: int = 1
) -> ExactResult:
    """Maximum of ``f`` over all feasible lattice points of a cardinality, polymatroid or knapsack constraint

    Ties are won by the lexicographically smallest point. With ``workers > 1`` the subtrees of the
    values of the first coordinate are enumerated in parallel, the result doesn't depend on it.

    Raises
    ------
    CapacityError
        if the estimated size of the region exceeds ``limit``

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> from lattimax.solver.knapsack import KnapsackInstance
    >>> f = FunctionOracle(lambda x: 3.0 * x[0] + x[1], box=[2, 2])
    >>> brute_force_opt(f, KnapsackInstance([0.5, 0.5], cap=[2, 2]))
    ExactResult(opt_value=6.0, argmax=LatticePoint([2, 0]), points_enumerated=6)
    """
    region = feasible_region(constraint, f)
    if region.estimate > limit:
        raise CapacityError("feasible region is too large to enumerate", estimate=region.estimate, limit=limit)
    if not prune:
        return _scan(f, region)
    first_values = list(range(int(region.cap[0]) + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(lambda v: _search(f, region, v), first_values))
    else:
        parts = [_search(f, region, v) for v in first_values]
    best = None
    enumerated = 0
    for part in parts:
        if part is None:
            # the first coordinate is already out of the region, so are the bigger values
            break
        enumerated += part.points_enumerated
        if best is None or part.opt_value > best.opt_value:
            best = part
    result = ExactResult(best.opt_value, best.argmax, enumerated)
    log.debug("brute force: %s", result)
    return result


def certify_ratio(approx_value: float, exact: ExactResult, bound: float) -> bool:
    """``approx_value >= bound * OPT`` up to ``1e-9``, always true when ``OPT = 0``

    >>> certify_ratio(0.63, ExactResult(1.0, LatticePoint([1]), 2), 1 - 1 / math.e)
    False
    """
    assert exact.opt_value >= 0, "optimum of a non-negative function should be non-negative"
    if exact.opt_value == 0:
        return True
    return approx_value >= bound * exact.opt_value - RATIO_SLACK


def _search(f: ValueOracle, region: Region, first: int) -> Optional[ExactResult]:
    x = np.zeros(f.n, dtype=np.int64)
    x[0] = first
    if not region.contains(LatticePoint._wrap(x.copy())):
        return None
    best: List = [None, None, 0]
    _descend(f, region, x, 1, best)
    return ExactResult(best[0], best[1], best[2])


def _descend(f: ValueOracle, region: Region, x: np.ndarray, depth: int, best: List):
    if depth == f.n:
        point = LatticePoint._wrap(x.copy())
        value = f.eval(point)
        best[2] += 1
        if best[0] is None or value > best[0]:
            best[0], best[1] = value, point
        return
    for v in range(int(region.cap[depth]) + 1):
        x[depth] = v
        if v and not region.contains(LatticePoint._wrap(x.copy())):
            break
        _descend(f, region, x, depth + 1, best)
    x[depth] = 0


def _scan(f: ValueOracle, region: Region) -> ExactResult:
    best_value, best_point, enumerated = None, None, 0
    for point in box_points(region.cap):
        if not region.contains(point):
            continue
        value = f.eval(point)
        enumerated += 1
        if best_value is None or value > best_value:
            best_value, best_point = value, point
    return ExactResult(best_value, best_point, enumerated)


def _box_estimate(cap: LatticePoint) -> int:
    return math.prod(int(c) + 1 for c in cap)


def _check_cap(cap: LatticePoint, f: ValueOracle):
    if cap.n != f.n:
        raise PreconditionError(f"oracle has {f.n} elements, but the constraint has {cap.n}")
    if not cap <= f.box:
        raise PreconditionError(f"cap {cap} exceeds the oracle box {f.box}")

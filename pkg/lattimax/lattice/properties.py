"""Certification of the submodularity class of an oracle.

:func:`check_property` samples witness tuples from a seeded generator, :func:`exhaustive_check`
tabulates the oracle on its whole box and checks the local form of every inequality,
which is equivalent to checking every witness tuple.
"""

from dataclasses import dataclass
import enum
import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from lattimax.errors import CapacityError, DomainError
from lattimax.lattice.operations import box_points, box_size, join_meet
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.types import LatticePoint

log = logging.getLogger(__name__)

TOLERANCE = 1e-9
EXHAUSTIVE_LIMIT = 10**5


class Property(enum.Enum):
    dr_submodular = "dr_submodular"
    lattice_submodular = "lattice_submodular"
    monotone = "monotone"
    weak_dr = "weak_dr"
    coordinate_concave = "coordinate_concave"


class Violation(NamedTuple):
    """Witness of a violated inequality ``lhs >= rhs``

    ``e`` and ``k`` are ``None`` for properties which don't use them.
    """

    x: LatticePoint
    y: LatticePoint
    e: Optional[int]
    k: Optional[int]
    lhs: float
    rhs: float


@dataclass(frozen=True)
class PropertyReport:
    property_name: str
    trials: int
    violations: Tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_property(f: ValueOracle, kind, trials: int, seed: int) -> PropertyReport:
    """Samples ``trials`` witness tuples and records every violated inequality

    ``y`` is drawn uniformly from the box and ``x`` uniformly from ``[0, y]``; for lattice
    submodularity ``x`` and ``y`` are two independent points of the box.
    Comparisons use absolute tolerance ``1e-9``.

    Parameters
    ----------
    f: ValueOracle
        oracle to check
    kind: Property or str
        one of ``dr_submodular``, ``lattice_submodular``, ``monotone``, ``weak_dr``, ``coordinate_concave``
    trials: int
        number of sampled witness tuples, at least 1
    seed: int
        seed of the generator, the report is fully determined by it

    Returns
    -------
    PropertyReport

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: x[0] * x[1], box=[2, 2])
    >>> check_property(f, "monotone", trials=20, seed=0).passed
    True
    >>> check_property(f, "dr_submodular", trials=200, seed=0).passed
    False
    """
    kind = _as_property(kind)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise DomainError(f"trials should be a positive integer, but it is {trials!r}")
    sampler, inequality = _CHECKS[kind]
    rng = np.random.default_rng(seed)
    cap = f.box.array
    violations = []
    for _ in range(trials):
        witness = sampler(rng, cap)
        if witness is None:
            # no element admits a witness tuple, the property holds vacuously
            break
        violation = inequality(f, *witness)
        if violation is not None:
            violations.append(violation)
    report = PropertyReport(kind.value, trials, tuple(violations))
    log.debug("%s: %d trials, %d violations", kind.value, trials, len(violations))
    return report


def exhaustive_check(f: ValueOracle, kind, limit: int = EXHAUSTIVE_LIMIT) -> PropertyReport:
    """Checks every witness tuple of the box

    The oracle is evaluated once per point of the box. The inequalities are checked in their
    local (unit step) form, which is equivalent to the global one on a product of chains.

    Raises
    ------
    CapacityError
        if the box has more than ``limit`` points

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: sum(v ** 0.5 for v in x), box=[3, 3])
    >>> exhaustive_check(f, "dr_submodular").passed
    True
    >>> report = exhaustive_check(FunctionOracle(lambda x: x[0] * x[1], box=[2, 2]), "dr_submodular")
    >>> report.violations[0][:3]
    (LatticePoint([0, 0]), LatticePoint([0, 1]), 0)
    """
    kind = _as_property(kind)
    size = box_size(f.box)
    if size > limit:
        raise CapacityError(f"box {f.box} is too large for the exhaustive check", estimate=size, limit=limit)
    values = tabulate(f)
    trials, violations = _LOCAL_CHECKS[kind](values)
    return PropertyReport(kind.value, trials, tuple(violations))


def tabulate(f: ValueOracle) -> np.ndarray:
    """Values of ``f`` on the whole box as an array of shape ``box + 1``"""
    values = np.empty(tuple(int(c) + 1 for c in f.box.array))
    for point in box_points(f.box):
        values[tuple(point.array)] = f.eval(point)
    return values


def _as_property(kind) -> Property:
    try:
        return Property(kind.value if isinstance(kind, Property) else kind)
    except ValueError:
        raise DomainError(f"unknown property {kind!r}, expected one of {[p.value for p in Property]}") from None


def _point(arr) -> LatticePoint:
    return LatticePoint._wrap(np.asarray(arr, dtype=np.int64))


def _uniform_below(rng: np.random.Generator, upper: np.ndarray) -> np.ndarray:
    return rng.integers(0, upper + 1)


def _pick_element(rng: np.random.Generator, cap: np.ndarray, room: int) -> Optional[int]:
    eligible = np.flatnonzero(cap >= room)
    if eligible.size == 0:
        return None
    return int(rng.choice(eligible))


def _sample_chain(rng, cap):
    y = _uniform_below(rng, cap)
    return _point(_uniform_below(rng, y)), _point(y), None, None


def _sample_pair(rng, cap):
    return _point(_uniform_below(rng, cap)), _point(_uniform_below(rng, cap)), None, None


def _sample_dr(rng, cap):
    e = _pick_element(rng, cap, 1)
    if e is None:
        return None
    upper = cap.copy()
    upper[e] -= 1
    y = _uniform_below(rng, upper)
    return _point(_uniform_below(rng, y)), _point(y), e, 1


def _sample_weak_dr(rng, cap):
    e = _pick_element(rng, cap, 1)
    if e is None:
        return None
    k = int(rng.integers(1, cap[e] + 1))
    y = _uniform_below(rng, cap)
    return _point(_uniform_below(rng, y)), _point(y), e, k


def _sample_concave(rng, cap):
    e = _pick_element(rng, cap, 2)
    if e is None:
        return None
    upper = cap.copy()
    upper[e] -= 2
    x = _point(_uniform_below(rng, upper))
    return x, x, e, 1


def _violation(x, y, e, k, lhs, rhs) -> Optional[Violation]:
    if lhs < rhs - TOLERANCE:
        return Violation(x, y, e, k, lhs, rhs)
    return None


def _dr_inequality(f, x, y, e, k):
    lhs = f.eval(x.add_units(e)) - f.eval(x)
    rhs = f.eval(y.add_units(e)) - f.eval(y)
    return _violation(x, y, e, k, lhs, rhs)


def _lattice_inequality(f, x, y, e, k):
    join, meet = join_meet(x, y)
    return _violation(x, y, e, k, f.eval(x) + f.eval(y), f.eval(join) + f.eval(meet))


def _monotone_inequality(f, x, y, e, k):
    return _violation(x, y, e, k, f.eval(y), f.eval(x))


def _weak_dr_inequality(f, x, y, e, k):
    def lift(z):
        return z.add_units(e, max(k - z[e], 0))

    lhs = f.eval(lift(x)) - f.eval(x)
    rhs = f.eval(lift(y)) - f.eval(y)
    return _violation(x, y, e, k, lhs, rhs)


def _concave_inequality(f, x, y, e, k):
    x1 = x.add_units(e)
    f1 = f.eval(x1)
    return _violation(x, x1, e, k, f1 - f.eval(x), f.eval(x1.add_units(e)) - f1)


_CHECKS: Dict[Property, Tuple[Callable, Callable]] = {
    Property.dr_submodular: (_sample_dr, _dr_inequality),
    Property.lattice_submodular: (_sample_pair, _lattice_inequality),
    Property.monotone: (_sample_chain, _monotone_inequality),
    Property.weak_dr: (_sample_weak_dr, _weak_dr_inequality),
    Property.coordinate_concave: (_sample_concave, _concave_inequality),
}


def _shift(index: Tuple[int, ...], axis: int, by: int = 1) -> LatticePoint:
    arr = np.array(index, dtype=np.int64)
    arr[axis] += by
    return _point(arr)


def _collect(lhs: np.ndarray, rhs: np.ndarray, make) -> List[Violation]:
    return [make(idx, float(lhs[idx]), float(rhs[idx])) for idx in map(tuple, np.argwhere(lhs < rhs - TOLERANCE))]


def _unit_steps_antitone(g: np.ndarray, e: Optional[int], k: Optional[int]):
    """Checks ``g(x) >= g(x + chi_j)`` for every ``x`` and ``j``, i.e. ``g`` is non-increasing"""
    trials = 0
    violations = []
    for j in range(g.ndim):
        if g.shape[j] < 2:
            continue
        lower = np.delete(g, -1, axis=j)
        upper = np.delete(g, 0, axis=j)
        trials += lower.size
        violations.extend(
            _collect(lower, upper, lambda idx, lhs, rhs, j=j: Violation(_point(idx), _shift(idx, j), e, k, lhs, rhs))
        )
    return trials, violations


def _local_dr(values: np.ndarray):
    trials = 0
    violations = []
    for e in range(values.ndim):
        if values.shape[e] < 2:
            continue
        t, v = _unit_steps_antitone(np.diff(values, axis=e), e, 1)
        trials += t
        violations.extend(v)
    return trials, violations


def _local_lattice(values: np.ndarray):
    trials = 0
    violations = []
    for i in range(values.ndim):
        for j in range(i + 1, values.ndim):
            if values.shape[i] < 2 or values.shape[j] < 2:
                continue
            # f(x + chi_i) + f(x + chi_j) >= f(x + chi_i + chi_j) + f(x)
            base = values[_slices(values.ndim, (i, slice(None, -1)), (j, slice(None, -1)))]
            step_i = values[_slices(values.ndim, (i, slice(1, None)), (j, slice(None, -1)))]
            step_j = values[_slices(values.ndim, (i, slice(None, -1)), (j, slice(1, None)))]
            both = values[_slices(values.ndim, (i, slice(1, None)), (j, slice(1, None)))]
            trials += base.size
            violations.extend(
                _collect(
                    step_i + step_j,
                    both + base,
                    lambda idx, lhs, rhs, i=i, j=j: Violation(_shift(idx, i), _shift(idx, j), None, None, lhs, rhs),
                )
            )
    return trials, violations


def _local_monotone(values: np.ndarray):
    trials = 0
    violations = []
    for e in range(values.ndim):
        if values.shape[e] < 2:
            continue
        lower = np.delete(values, -1, axis=e)
        upper = np.delete(values, 0, axis=e)
        trials += lower.size
        violations.extend(
            _collect(
                upper, lower, lambda idx, lhs, rhs, e=e: Violation(_point(idx), _shift(idx, e), None, None, lhs, rhs)
            )
        )
    return trials, violations


def _local_weak_dr(values: np.ndarray):
    trials = 0
    violations = []
    for e in range(values.ndim):
        levels = np.arange(values.shape[e])
        for k in range(1, values.shape[e]):
            lifted = np.take(values, np.maximum(levels, k), axis=e)
            t, v = _unit_steps_antitone(lifted - values, e, k)
            trials += t
            violations.extend(v)
    return trials, violations


def _local_concave(values: np.ndarray):
    trials = 0
    violations = []
    for e in range(values.ndim):
        if values.shape[e] < 3:
            continue
        d = np.diff(values, axis=e)
        lower = np.delete(d, -1, axis=e)
        upper = np.delete(d, 0, axis=e)
        trials += lower.size
        violations.extend(
            _collect(lower, upper, lambda idx, lhs, rhs, e=e: Violation(_point(idx), _shift(idx, e), e, 1, lhs, rhs))
        )
    return trials, violations


def _slices(ndim: int, *axis_slices) -> Tuple[slice, ...]:
    result = [slice(None)] * ndim
    for axis, s in axis_slices:
        result[axis] = s
    return tuple(result)


_LOCAL_CHECKS = {
    Property.dr_submodular: _local_dr,
    Property.lattice_submodular: _local_lattice,
    Property.monotone: _local_monotone,
    Property.weak_dr: _local_weak_dr,
    Property.coordinate_concave: _local_concave,
}


def tau(f: ValueOracle, limit: int = EXHAUSTIVE_LIMIT) -> float:
    """Ratio of ``max_e f(c(e) chi_e)`` to the smallest positive unit marginal on the box

    Only used for reporting, ``inf`` when ``f`` has no positive unit marginal.

    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> tau(FunctionOracle(lambda x: min(x[0], 2) + 0.5 * x[1], box=[3, 1]))
    4.0
    """
    size = box_size(f.box)
    if size > limit:
        raise CapacityError(f"box {f.box} is too large to compute tau", estimate=size, limit=limit)
    values = tabulate(f)
    top = max(float(np.take(values, -1, axis=e).flat[0]) for e in range(values.ndim))
    positive = [d[d > TOLERANCE] for d in (np.diff(values, axis=e) for e in range(values.ndim))]
    smallest = min((float(p.min()) for p in positive if p.size), default=None)
    if smallest is None:
        return float("inf")
    return top / smallest

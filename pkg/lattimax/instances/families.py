"""Objective families with known structure.

Every builder is pure: the same arguments give an oracle with the same values everywhere.
Random generators take a seed and draw their parameters from ``numpy.random.default_rng``.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from lattimax._helpers.validate import _as_real_vector, _check_positive_int
from lattimax.errors import ConstructionError, DomainError
from lattimax.lattice.oracle import TableOracle, ValueOracle
from lattimax.lattice.properties import Property, exhaustive_check
from lattimax.lattice.types import LatticePoint
from lattimax.solver.knapsack import KnapsackInstance

log = logging.getLogger(__name__)

SEARCH_ATTEMPTS = 1000
WEIGHT_GRID = 0.05


class SeparableConcaveOracle(ValueOracle):
    """``f(x) = sum_e a_e min(x(e), c(e)) ** p_e``"""

    def __init__(self, coeffs: np.ndarray, powers: np.ndarray, cap):
        super().__init__(cap)
        self.coeffs = coeffs
        self.powers = powers

    def _evaluate(self, x: LatticePoint) -> float:
        bounded = np.minimum(x.array, self.box.array).astype(np.float64)
        return float(np.dot(self.coeffs, bounded**self.powers))


class BudgetAllocationOracle(ValueOracle):
    """``f(x) = sum_t [1 - prod_s (1 - q_st) ** x(s)]`` over the edges ``(s, t, q_st)`` of a bipartite graph

    Sources are the elements of the ground set. One evaluation costs ``O(#edges)``: the logarithms
    of the failure probabilities are summed per target with ``numpy.bincount``.
    """

    def __init__(self, sources: np.ndarray, targets: np.ndarray, probabilities: np.ndarray, cap, target_count: int):
        super().__init__(cap)
        self.sources = sources
        self.targets = targets
        self.probabilities = probabilities
        self.target_count = target_count
        self._log_miss = np.log1p(-probabilities)

    def _evaluate(self, x: LatticePoint) -> float:
        if not self.sources.size:
            return 0.0
        exponents = np.bincount(
            self.targets, weights=x.array[self.sources] * self._log_miss, minlength=self.target_count
        )
        return float(-np.expm1(exponents).sum()) + 0.0


class LatticeTableOracle(TableOracle):
    """Table oracle certified monotone and lattice submodular, ``is_dr`` tells if it is also DR-submodular"""

    def __init__(self, table, is_dr: bool):
        super().__init__(table)
        self.is_dr = is_dr


def make_separable_concave(coeffs: Sequence[float], powers: Sequence[float], cap) -> SeparableConcaveOracle:
    """Monotone DR-submodular ``f(x) = sum_e a_e min(x(e), c(e)) ** p_e``, ``a >= 0``, ``p in (0, 1]``

    Examples
    --------
    >>> f = make_separable_concave([3, 1], [1, 1], cap=[2, 2])
    >>> f(LatticePoint([2, 1]))
    7.0
    """
    coeffs = _as_real_vector(coeffs, "coeffs")
    powers = np.asarray(powers, dtype=np.float64)
    cap = LatticePoint(cap)
    if not len(coeffs) == len(powers) == cap.n:
        raise DomainError(
            f"coeffs, powers and cap should have equal lengths, but they are {len(coeffs)}, {len(powers)} and {cap.n}"
        )
    outside = np.flatnonzero(~((powers > 0) & (powers <= 1)))
    if outside.size:
        e = int(outside[0])
        raise DomainError(f"power of element {e} is {powers[e]}, but it should be in (0, 1]")
    return SeparableConcaveOracle(coeffs, powers, cap)


def make_budget_allocation(
    edges: Sequence[Tuple[int, int, float]], cap, targets: Optional[int] = None
) -> BudgetAllocationOracle:
    """Budget allocation: source ``s`` gets ``x(s)`` units, each activating target ``t`` with probability ``q_st``

    ``f(x)`` is the expected number of activated targets; it is monotone DR-submodular.

    Parameters
    ----------
    edges: Sequence[Tuple[int, int, float]]
        ``(source, target, q)`` with ``q in (0, 1)``
    cap: LatticePoint
        budget cap per source, its length is the number of sources
    targets: Optional[int]
        number of targets, by default one more than the largest target index

    Examples
    --------
    >>> f = make_budget_allocation([(0, 0, 0.5)], cap=[3])
    >>> round(f(LatticePoint([1])), 12), round(f(LatticePoint([2])), 12)
    (0.5, 0.75)
    """
    cap = LatticePoint(cap)
    sources = np.array([s for s, _, _ in edges], dtype=np.int64)
    target_ids = np.array([t for _, t, _ in edges], dtype=np.int64)
    probabilities = np.array([q for _, _, q in edges], dtype=np.float64)
    for index, (s, t, q) in enumerate(edges):
        if not 0 <= s < cap.n:
            raise DomainError(f"source of edge {index} is {s}, but it should be in [0, {cap.n})")
        if t < 0:
            raise DomainError(f"target of edge {index} is {t}, but it should be non-negative")
        if not 0 < q < 1:
            raise DomainError(f"probability of edge {index} is {q}, but it should be in (0, 1)")
    target_count = int(target_ids.max()) + 1 if target_ids.size else 0
    if targets is not None:
        if targets < target_count:
            raise DomainError(f"there are {targets} targets, but edges use target {target_count - 1}")
        target_count = targets
    return BudgetAllocationOracle(sources, target_ids, probabilities, cap, target_count)


def make_lattice_non_dr(table) -> LatticeTableOracle:
    """Table oracle certified monotone and lattice submodular by an exhaustive scan

    The table may be DR-submodular as well, which is reported by ``is_dr`` rather than refused.

    Raises
    ------
    ConstructionError
        if the table isn't monotone or lattice submodular, with the first violation as witness

    Examples
    --------
    >>> f = make_lattice_non_dr([[0, 2, 4], [1, 2, 4], [4, 5, 7]])
    >>> f.is_dr, f.call_count
    (False, 0)
    >>> make_lattice_non_dr([[0, 1], [1, 3]])
    Traceback (most recent call last):
    ...
    lattimax.errors.ConstructionError: table isn't lattice_submodular, witness: ...
    """
    checked = TableOracle(table)
    for kind in (Property.monotone, Property.lattice_submodular):
        report = exhaustive_check(checked, kind)
        if not report.passed:
            raise ConstructionError(f"table isn't {kind.value}", witness=report.violations[0])
    is_dr = exhaustive_check(checked, Property.dr_submodular).passed
    return LatticeTableOracle(checked.table, is_dr)


def search_lattice_table(shape: Sequence[int], seed: int, attempts: int = SEARCH_ATTEMPTS) -> LatticeTableOracle:
    """Random monotone lattice submodular table which isn't DR-submodular

    Candidates are sums of coordinate-wise convex chains with random integer increments and
    pairwise terms ``-lambda min(x(i), 1) min(x(j), 1)``; the first candidate passing the
    exhaustive certification is returned.

    Raises
    ------
    DomainError
        if no axis has three values, every such table is DR-submodular
    ConstructionError
        if no candidate was certified in ``attempts`` tries

    Examples
    --------
    >>> f = search_lattice_table((3, 3), seed=0)
    >>> f.is_dr, f.box
    (False, LatticePoint([2, 2]))
    """
    shape = tuple(int(s) for s in shape)
    if not shape or min(shape) < 1:
        raise DomainError(f"shape should have positive entries, but it is {shape}")
    if max(shape) < 3:
        raise DomainError(f"at least one axis should have three values to break concavity, but shape is {shape}")
    _check_positive_int(attempts, "attempts")
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        table = _candidate_table(rng, shape)
        try:
            oracle = make_lattice_non_dr(table)
        except ConstructionError:
            continue
        if not oracle.is_dr:
            log.debug("certified a non-DR table of shape %s after %d attempts", shape, attempt + 1)
            return oracle
    raise ConstructionError(f"no certified table found in {attempts} attempts", witness=(shape, seed))


def _candidate_table(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    grids = np.indices(shape)
    values = np.zeros(shape)
    for axis, size in enumerate(shape):
        chain = np.concatenate(([0], np.cumsum(np.sort(rng.integers(1, 4, size=size - 1)))))
        values += chain[grids[axis]]
    for i in range(len(shape)):
        for j in range(i + 1, len(shape)):
            weight = rng.integers(0, 2)
            values -= weight * np.minimum(grids[i], 1) * np.minimum(grids[j], 1)
    return values


def random_separable_concave(n: int, cap_max: int, seed: int) -> SeparableConcaveOracle:
    """Separable concave oracle with caps in ``[1, cap_max]``, coefficients in ``[0, 1)``, powers in ``[0.2, 1]``"""
    _check_positive_int(n, "n")
    _check_positive_int(cap_max, "cap_max")
    rng = np.random.default_rng(seed)
    cap = rng.integers(1, cap_max + 1, size=n)
    coeffs = rng.random(n)
    powers = rng.uniform(0.2, 1.0, size=n)
    return make_separable_concave(coeffs, powers, cap)


def random_budget_allocation(
    sources: int, targets: int, cap_max: int, seed: int, density: float = 0.5
) -> BudgetAllocationOracle:
    """Budget allocation over a random bipartite graph, every edge kept with probability ``density``"""
    _check_positive_int(sources, "sources")
    _check_positive_int(targets, "targets")
    _check_positive_int(cap_max, "cap_max")
    if not 0 <= density <= 1:
        raise DomainError(f"density should be in [0, 1], but it is {density}")
    rng = np.random.default_rng(seed)
    cap = rng.integers(1, cap_max + 1, size=sources)
    edges = [
        (s, t, float(rng.uniform(0.05, 0.95)))
        for s in range(sources)
        for t in range(targets)
        if rng.random() < density
    ]
    return make_budget_allocation(edges, cap, targets)


def random_lattice_table(shape: Sequence[int], seed: int) -> LatticeTableOracle:
    return search_lattice_table(shape, seed)


def random_knapsack(n: int, cap_max: int, seed: int, grid: float = WEIGHT_GRID) -> KnapsackInstance:
    """Knapsack with caps in ``[1, cap_max]`` and weights on the grid ``grid, 2 grid, ..., 1``

    >>> inst = random_knapsack(3, 3, seed=1)
    >>> all(abs(w / 0.05 - round(w / 0.05)) < 1e-9 for w in inst.weights)
    True
    """
    _check_positive_int(n, "n")
    _check_positive_int(cap_max, "cap_max")
    rng = np.random.default_rng(seed)
    steps = round(1 / grid)
    weights = tuple(float(k) * grid for k in rng.integers(1, steps + 1, size=n))
    return KnapsackInstance(weights, rng.integers(1, cap_max + 1, size=n))

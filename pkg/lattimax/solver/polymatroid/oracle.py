"""Polymatroids given by a membership oracle and, optionally, a closed-form rank function.

A polymatroid is ``P = {x >= 0 : x(X) <= rho(X) for all X}``. Subsets are passed around as
tuples (or any iterable) of element indices.
"""

from abc import ABC, abstractmethod
import itertools
import logging
from typing import Callable, Iterable, Optional, Tuple, Union

import numpy as np

from lattimax._helpers.validate import _check_element, _check_non_negative_int
from lattimax.errors import CapacityError, PreconditionError
from lattimax.lattice.properties import PropertyReport, Violation
from lattimax.lattice.types import FractionalPoint, LatticePoint
from lattimax.solver.search import last_true

log = logging.getLogger(__name__)

MEMBER_TOLERANCE = 1e-9
SUBSET_LIMIT = 20
AXIOM_LIMIT = 12
RAY_LIMIT = 1 << 62

Point = Union[LatticePoint, FractionalPoint]


class PolymatroidOracle(ABC):
    """Integral polymatroid over ``n`` elements

    Subclasses implement :meth:`member`. The rank function defaults to the greedy value
    ``rho(X) = max{y(X) : y in P}`` computed with membership queries; families with a closed form
    override :meth:`rank`, :meth:`exchange_capacity` and :meth:`_translated_rank`.
    """

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError(f"polymatroid should have at least one element, but n is {n}")
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @abstractmethod
    def member(self, x: Point) -> bool:
        """``x in P``, fractional points are tested against the polytope with tolerance ``1e-9``"""

    @property
    def has_closed_form_rank(self) -> bool:
        return type(self).rank is not PolymatroidOracle.rank

    def rank(self, subset: Iterable[int]) -> int:
        """``rho(X)``: greedily fill the elements of ``X`` as far as membership allows"""
        y = LatticePoint.zeros(self._n)
        for e in sorted(set(subset)):
            y = y.add_units(e, _ray_limit(self, y, e))
        return y.total()

    @property
    def rank_total(self) -> int:
        """``r = rho(E)``"""
        return self.rank(range(self._n))

    def exchange_capacity(self, w: np.ndarray, i: int, j: Optional[int] = None) -> float:
        """Largest ``t >= 0`` with ``w + t (chi_i - chi_j)`` (or ``w + t chi_i``) in ``P``

        Generic version: minimum of ``rho(X) - w(X)`` over the sets containing ``i`` but not ``j``,
        enumerated for ``n <= 20``.
        """
        _check_element(i, self._n)
        if self._n > SUBSET_LIMIT:
            raise CapacityError("too many elements to enumerate tight sets", estimate=self._n, limit=SUBSET_LIMIT)
        others = [e for e in range(self._n) if e != i and e != j]
        best = np.inf
        for size in range(len(others) + 1):
            for rest in itertools.combinations(others, size):
                subset = (i,) + rest
                best = min(best, self.rank(subset) - float(np.sum(w[list(subset)])))
        if j is not None:
            best = min(best, float(w[j]))
        return max(float(best), 0.0)

    def _translated_rank(self, base: LatticePoint, subset: Tuple[int, ...]) -> Optional[int]:
        """Closed form of the translated rank, ``None`` if the family has none"""
        return None

    def check_rank_axioms(self, limit: int = AXIOM_LIMIT) -> PropertyReport:
        """Exhaustive check of ``rho(∅) = 0``, monotonicity and submodularity

        Subsets are reported as 0/1 lattice points.
        """
        return check_rank_axioms(self.rank, self._n, limit)

    def __repr__(self):
        return f"{type(self).__name__}(n={self._n})"


class FunctionPolymatroid(PolymatroidOracle):
    """Polymatroid given by a python membership predicate only

    >>> P = FunctionPolymatroid(lambda x: x[0] + x[1] <= 3 and max(x) <= 2, n=2)
    >>> P.rank([0]), P.rank_total
    (2, 3)
    """

    def __init__(self, member: Callable[[np.ndarray], bool], n: int):
        super().__init__(n)
        self._member = member

    def member(self, x: Point) -> bool:
        if np.any(x.array < -MEMBER_TOLERANCE):
            return False
        return bool(self._member(x.array))


def k_max_in_polymatroid(P: PolymatroidOracle, anchor: Point, e: int, hard_cap: int) -> int:
    """Largest ``k <= hard_cap`` with ``anchor + k chi_e in P``

    Membership along a ray from a feasible point holds on a prefix, so binary search needs at most
    ``ceil(log2(hard_cap + 1)) + 1`` membership queries.

    Raises
    ------
    PreconditionError
        if ``anchor`` isn't in ``P``

    Examples
    --------
    >>> P = FunctionPolymatroid(lambda x: max(x) <= 2 and sum(x) <= 5, n=3)
    >>> k_max_in_polymatroid(P, LatticePoint([0, 0, 0]), 1, hard_cap=10)
    2
    """
    _check_element(e, P.n)
    _check_non_negative_int(hard_cap, "hard_cap")
    if not P.member(anchor):
        raise PreconditionError(f"anchor {anchor} isn't in the polymatroid")
    unit = np.zeros(P.n)
    unit[e] = 1.0
    if isinstance(anchor, LatticePoint):
        return last_true(lambda k: P.member(anchor.add_units(e, k)), 0, hard_cap)
    return last_true(lambda k: P.member(FractionalPoint(anchor.array + k * unit)), 0, hard_cap)


def translated_rank(P: PolymatroidOracle, base: LatticePoint, subset: Iterable[int]) -> int:
    """``rho'(X) = min_{Y ⊆ E} (rho(Y) - base(Y) + |X \\ Y|)``

    ``base`` is ``⌊x⌋`` for a point ``x`` of ``P``; ``rho'`` is the rank function of the matroid whose
    polytope translated by ``base`` is ``P ∩ C(x)``.

    Raises
    ------
    CapacityError
        if the family has no closed form and the ground set has more than 20 elements

    Examples
    --------
    >>> P = FunctionPolymatroid(lambda x: sum(x) <= 3 and max(x) <= 1, n=3)
    >>> translated_rank(P, LatticePoint([1, 1, 0]), (0, 1, 2))
    1
    """
    subset = tuple(sorted(set(subset)))
    for e in subset:
        _check_element(e, P.n)
    closed = P._translated_rank(base, subset)
    if closed is not None:
        return closed
    if P.n > SUBSET_LIMIT:
        raise CapacityError("too many elements to minimize over subsets", estimate=P.n, limit=SUBSET_LIMIT)
    members = set(subset)
    best = len(subset)
    for size in range(1, P.n + 1):
        for inner in itertools.combinations(range(P.n), size):
            value = P.rank(inner) - sum(base[e] for e in inner) + len(members.difference(inner))
            best = min(best, value)
    return best


def check_rank_axioms(rank: Callable[[Tuple[int, ...]], int], n: int, limit: int = AXIOM_LIMIT) -> PropertyReport:
    """Exhaustively checks that ``rank`` is normalized, monotone and submodular on ``2^E``

    Submodularity and monotonicity are checked in their local forms
    ``rho(X + e) + rho(X + f) >= rho(X + e + f) + rho(X)`` and ``rho(X) <= rho(X + e)``.

    >>> check_rank_axioms(lambda X: min(len(X), 2), 4).passed
    True
    >>> check_rank_axioms(lambda X: len(X) ** 2, 3).passed
    False
    """
    if n > limit:
        raise CapacityError("too many elements for the exhaustive rank check", estimate=n, limit=limit)
    values = {}
    for mask in range(1 << n):
        values[mask] = rank(tuple(e for e in range(n) if mask >> e & 1))
    violations = []
    trials = 1
    if values[0] != 0:
        violations.append(Violation(_indicator(0, n), _indicator(0, n), None, None, 0.0, float(values[0])))
    for mask in range(1 << n):
        for e in range(n):
            if mask >> e & 1:
                continue
            with_e = mask | 1 << e
            trials += 1
            if values[mask] > values[with_e]:
                violations.append(
                    Violation(_indicator(mask, n), _indicator(with_e, n), e, None, values[with_e], values[mask])
                )
            for g in range(e + 1, n):
                if mask >> g & 1:
                    continue
                with_g = mask | 1 << g
                both = with_e | 1 << g
                trials += 1
                if values[with_e] + values[with_g] < values[both] + values[mask]:
                    violations.append(
                        Violation(
                            _indicator(with_e, n),
                            _indicator(with_g, n),
                            None,
                            None,
                            values[with_e] + values[with_g],
                            values[both] + values[mask],
                        )
                    )
    return PropertyReport("polymatroid_rank", trials, tuple(violations))


def member_by_rank(rank: Callable[[Tuple[int, ...]], int], x: Point, n: int) -> bool:
    """``x(X) <= rho(X)`` for every ``X``, by enumerating all ``2^n`` subsets"""
    if n > SUBSET_LIMIT:
        raise CapacityError("too many elements to check membership by subsets", estimate=n, limit=SUBSET_LIMIT)
    arr = x.array
    if np.any(arr < -MEMBER_TOLERANCE):
        return False
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            if float(arr[list(subset)].sum()) > rank(subset) + MEMBER_TOLERANCE:
                return False
    return True


def _indicator(mask: int, n: int) -> LatticePoint:
    return LatticePoint([mask >> e & 1 for e in range(n)])


def _ray_limit(P: PolymatroidOracle, anchor: LatticePoint, e: int) -> int:
    """Largest ``k`` with ``anchor + k chi_e in P``, found by doubling then bisection"""
    if not P.member(anchor.add_units(e, 1)):
        return 0
    k = 1
    while P.member(anchor.add_units(e, 2 * k)):
        k *= 2
        if k >= RAY_LIMIT:
            raise CapacityError(f"polymatroid looks unbounded along element {e}", estimate=k, limit=RAY_LIMIT)
    return last_true(lambda t: P.member(anchor.add_units(e, t)), k, 2 * k - 1)

"""Closed-form polymatroid families."""

import itertools
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from lattimax._helpers.validate import _check_element, _check_non_negative_int
from lattimax.errors import DomainError
from lattimax.lattice.types import LatticePoint
from lattimax.solver.polymatroid.oracle import (
    MEMBER_TOLERANCE,
    SUBSET_LIMIT,
    PolymatroidOracle,
    check_rank_axioms,
    member_by_rank,
)

RANK_TABLE_LIMIT = 12


class UniformPolymatroid(PolymatroidOracle):
    """``rho(X) = min(a |X|, r)``, i.e. ``P = {x : 0 <= x <= a, x(E) <= r}``

    Examples
    --------
    >>> P = UniformPolymatroid(3, a=2, r=5)
    >>> P.rank([0, 1]), P.member(LatticePoint([2, 2, 1])), P.member(LatticePoint([3, 0, 0]))
    (4, True, False)
    """

    def __init__(self, n: int, a: int, r: int):
        super().__init__(n)
        _check_non_negative_int(a, "a")
        _check_non_negative_int(r, "r")
        self.a = a
        self.r = r

    def member(self, x) -> bool:
        arr = x.array
        return bool(
            np.all(arr >= -MEMBER_TOLERANCE)
            and np.all(arr <= self.a + MEMBER_TOLERANCE)
            and arr.sum() <= self.r + MEMBER_TOLERANCE
        )

    def rank(self, subset: Iterable[int]) -> int:
        return min(self.a * len(set(subset)), self.r)

    def exchange_capacity(self, w: np.ndarray, i: int, j: Optional[int] = None) -> float:
        _check_element(i, self.n)
        if j is None:
            t = min(self.a - w[i], self.r - w.sum())
        else:
            t = min(self.a - w[i], w[j])
        return max(float(t), 0.0)

    def _translated_rank(self, base: LatticePoint, subset: Tuple[int, ...]) -> int:
        # rho'(X) = min(|X| + sum_{e in X} min(0, a - b(e) - 1), r - b(E))
        if not subset:
            return 0
        below = len(subset) + sum(min(0, self.a - base[e] - 1) for e in subset)
        return min(below, self.r - base.total())

    def __repr__(self):
        return f"UniformPolymatroid(n={self.n}, a={self.a}, r={self.r})"


class PartitionPolymatroid(PolymatroidOracle):
    """``P = {x >= 0 : x(p) <= cap_p for every part p}``, ``rho(X) = sum of cap_p over parts meeting X``

    Parts should be disjoint and cover the ground set.

    Examples
    --------
    >>> P = PartitionPolymatroid([(0, 1), (2,)], caps=[2, 1])
    >>> [P.member(LatticePoint(x)) for x in ([1, 1, 1], [2, 0, 1], [2, 1, 0], [3, 0, 0])]
    [True, True, False, False]
    """

    def __init__(self, parts: Sequence[Sequence[int]], caps: Sequence[int]):
        if len(parts) != len(caps):
            raise DomainError(f"every part needs a capacity, but there are {len(parts)} parts and {len(caps)} caps")
        elements = [e for part in parts for e in part]
        n = len(elements)
        if n == 0 or sorted(elements) != list(range(n)):
            raise DomainError(f"parts should be disjoint and cover 0..n-1, but they are {parts}")
        super().__init__(n)
        for cap in caps:
            _check_non_negative_int(cap, "part capacity")
        self.parts = tuple(tuple(int(e) for e in part) for part in parts)
        self.caps = tuple(int(c) for c in caps)
        self._part_of = np.empty(n, dtype=np.int64)
        for index, part in enumerate(self.parts):
            self._part_of[list(part)] = index

    def member(self, x) -> bool:
        arr = x.array
        if np.any(arr < -MEMBER_TOLERANCE):
            return False
        loads = np.bincount(self._part_of, weights=arr, minlength=len(self.parts))
        return bool(np.all(loads <= np.array(self.caps) + MEMBER_TOLERANCE))

    def rank(self, subset: Iterable[int]) -> int:
        touched = {int(self._part_of[e]) for e in subset}
        return sum(self.caps[p] for p in touched)

    def part_of(self, e: int) -> int:
        return int(self._part_of[e])

    def exchange_capacity(self, w: np.ndarray, i: int, j: Optional[int] = None) -> float:
        _check_element(i, self.n)
        p = self.part_of(i)
        if j is not None and self.part_of(j) == p:
            return max(float(w[j]), 0.0)
        room = self.caps[p] - float(w[list(self.parts[p])].sum())
        if j is not None:
            room = min(room, float(w[j]))
        return max(room, 0.0)

    def _translated_rank(self, base: LatticePoint, subset: Tuple[int, ...]) -> int:
        # rho'(X) = sum_p min(|X ∩ p|, cap_p - b(p))
        total = 0
        for index, part in enumerate(self.parts):
            inside = [e for e in subset if self._part_of[e] == index]
            if inside:
                total += min(len(inside), self.caps[index] - sum(base[e] for e in part))
        return total

    def __repr__(self):
        return f"PartitionPolymatroid(parts={self.parts}, caps={self.caps})"


class RankTablePolymatroid(PolymatroidOracle):
    """Polymatroid given by an explicit rank table over all subsets, ``n <= 12``

    ``ranks`` maps a subset (any iterable of elements) to its rank; the empty set defaults to 0.

    >>> P = RankTablePolymatroid(2, {(0,): 2, (1,): 1, (0, 1): 2})
    >>> P.member(LatticePoint([1, 1])), P.member(LatticePoint([2, 1]))
    (True, False)
    """

    def __init__(self, n: int, ranks):
        super().__init__(n)
        if n > RANK_TABLE_LIMIT:
            raise DomainError(f"rank tables are limited to {RANK_TABLE_LIMIT} elements, but n is {n}")
        table = {frozenset(): 0}
        for subset, value in dict(ranks).items():
            key = frozenset(int(e) for e in subset)
            for e in key:
                _check_element(e, n)
            _check_non_negative_int(value, "rank")
            table[key] = int(value)
        missing = [s for s in _all_subsets(n) if frozenset(s) not in table]
        if missing:
            raise DomainError(f"rank table should define every subset, but {missing[0]} is missing")
        self._table = table
        report = check_rank_axioms(self.rank, n)
        if not report.passed:
            raise DomainError(f"rank table isn't a polymatroid rank function, witness {report.violations[0]}")

    def rank(self, subset: Iterable[int]) -> int:
        return self._table[frozenset(subset)]

    def member(self, x) -> bool:
        return member_by_rank(self.rank, x, self.n)


def make_polymatroid(family: str, **params) -> PolymatroidOracle:
    """Builds a polymatroid of a named family

    Parameters
    ----------
    family: str
        ``uniform`` (``n``, ``a``, ``r``), ``partition`` (``parts``, ``caps``) or ``rank_table``
        (``n``, ``ranks`` as a list of ``[subset, rank]`` pairs or a mapping)

    Examples
    --------
    >>> make_polymatroid("uniform", n=2, a=1, r=0).rank_total
    0
    >>> make_polymatroid("partition", parts=[[0, 1], [2]], caps=[2, 1]).rank([0, 2])
    3
    """
    if family == "uniform":
        return UniformPolymatroid(params["n"], params["a"], params["r"])
    if family == "partition":
        return PartitionPolymatroid(params["parts"], params["caps"])
    if family == "rank_table":
        ranks = params["ranks"]
        if not isinstance(ranks, dict):
            ranks = {tuple(subset): value for subset, value in ranks}
        return RankTablePolymatroid(params["n"], ranks)
    raise DomainError(f"unknown polymatroid family {family!r}, expected uniform, partition or rank_table")


def _all_subsets(n: int):
    if n > SUBSET_LIMIT:
        raise DomainError(f"too many elements to enumerate subsets: {n}")
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)

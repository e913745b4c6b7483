"""Binary searches over integer ranges with monotone predicates."""

from typing import Callable, Optional


def last_true(predicate: Callable[[int], bool], lo: int, hi: int) -> int:
    """Largest ``k`` in ``[lo, hi]`` with ``predicate(k)``

    ``predicate(lo)`` is assumed to hold and never evaluated, the set where the predicate
    holds should be a prefix of the range.

    >>> last_true(lambda k: k * k <= 10, 0, 100)
    3
    >>> last_true(lambda k: False, 0, 100)
    0
    """
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if predicate(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def first_true(predicate: Callable[[int], bool], lo: int, hi: int) -> Optional[int]:
    """Smallest ``k`` in ``[lo, hi]`` with ``predicate(k)`` or ``None``

    The set where the predicate holds should be a suffix of the range.

    >>> first_true(lambda k: k * k >= 10, 0, 100)
    4
    >>> first_true(lambda k: k > 5, 0, 5) is None
    True
    """
    if lo > hi or not predicate(hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo

from typing import Tuple

import numpy as np

from lattimax._helpers.validate import _check_same_dimension
from lattimax.lattice.types import LatticePoint


def join_meet(x: LatticePoint, y: LatticePoint) -> Tuple[LatticePoint, LatticePoint]:
    """Returns ``(x ∨ y, x ∧ y)``, the coordinate-wise maximum and minimum

    Examples
    --------
    >>> join_meet(LatticePoint([1, 3]), LatticePoint([2, 0]))
    (LatticePoint([2, 3]), LatticePoint([1, 0]))
    """
    _check_same_dimension(x, y)
    return (
        LatticePoint._wrap(np.maximum(x.array, y.array)),
        LatticePoint._wrap(np.minimum(x.array, y.array)),
    )


def multiset_diff(x: LatticePoint, y: LatticePoint) -> LatticePoint:
    """``{x} \\ {y}``, i.e. ``(x - y) ∨ 0``

    >>> multiset_diff(LatticePoint([3, 1]), LatticePoint([1, 2]))
    LatticePoint([2, 0])
    """
    _check_same_dimension(x, y)
    return LatticePoint._wrap(np.maximum(x.array - y.array, 0))


def unit(n: int, e: int, k: int = 1) -> LatticePoint:
    """``k * chi_e`` in dimension ``n``"""
    return LatticePoint.unit(n, e, k)


def box_points(box: LatticePoint):
    """Iterates over every lattice point of ``[0, box]`` in lexicographic order

    >>> [p.to_tuple() for p in box_points(LatticePoint([1, 1]))]
    [(0, 0), (0, 1), (1, 0), (1, 1)]
    """
    for index in np.ndindex(*(int(c) + 1 for c in box.array)):
        yield LatticePoint._wrap(np.array(index, dtype=np.int64))


def box_size(box: LatticePoint) -> int:
    return int(np.prod([int(c) + 1 for c in box.array], dtype=object))

"""Monotone lattice submodular tables which aren't DR-submodular.

Every table is certified by :func:`lattimax.instances.families.make_lattice_non_dr` when it is loaded.
"""

from typing import Dict, List

from lattimax.errors import DomainError
from lattimax.instances.families import LatticeTableOracle, make_lattice_non_dr

# f(a, b) = a^2 + 2b - min(a, 1) min(b, 1)
CONVEX_PAIR = [
    [0, 2, 4],
    [1, 2, 4],
    [4, 5, 7],
]

# f(a, b, c) = a^2 + 2b + 2c - min(a, 1) min(b, 1) - min(b, 1) min(c, 1)
CONVEX_CHAIN = [
    [[0, 2, 4], [2, 3, 5], [4, 5, 7]],
    [[1, 3, 5], [2, 3, 5], [4, 5, 7]],
    [[4, 6, 8], [5, 6, 8], [7, 8, 10]],
]

# f(a, b) = ceil(a / 2) * 2 + a + b - min(a, 1) min(b, 1), the steps along a alternate 3, 1, 3, 1
ALTERNATING_STEPS = [
    [0, 1, 2, 3, 4],
    [3, 3, 4, 5, 6],
    [4, 4, 5, 6, 7],
    [7, 7, 8, 9, 10],
    [8, 8, 9, 10, 11],
]

TABLES: Dict[str, List] = {
    "convex_pair": CONVEX_PAIR,
    "convex_chain": CONVEX_CHAIN,
    "alternating_steps": ALTERNATING_STEPS,
}


def load_fixture(name: str) -> LatticeTableOracle:
    """Certified oracle of a named fixture table

    >>> load_fixture("convex_pair").is_dr
    False
    """
    try:
        table = TABLES[name]
    except KeyError:
        raise DomainError(f"unknown fixture {name!r}, expected one of {sorted(TABLES)}") from None
    return make_lattice_non_dr(table)

from typing import List

import numpy as np


def _derive_seed(seed: int, *keys: int) -> int:
    """Independent integer seed for the sub-task identified by ``keys``

    >>> _derive_seed(1, 2, 3) == _derive_seed(1, 2, 3)
    True
    >>> _derive_seed(1, 2, 3) == _derive_seed(1, 3, 2)
    False
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _chunk_generators(seed: int, count: int) -> List[np.random.Generator]:
    # child i only depends on (seed, i), so chunking doesn't depend on worker count
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]

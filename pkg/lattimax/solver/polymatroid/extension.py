"""Continuous extension ``F(x) = E[f(x̄)]``, ``x̄ ~ D(x)``.

``D(x)`` rounds every coordinate independently: up to ``⌈x(i)⌉`` with probability ``⟨x(i)⟩``,
down to ``⌊x(i)⌋`` otherwise. ``F`` glues the multilinear extensions of ``f`` over the unit
hypercubes of the lattice.

Estimates only evaluate ``f`` at the distinct rounded points. While the number of fractional
coordinates is at most :data:`MULTINOMIAL_LIMIT` the counts of the rounding patterns are drawn
at once from a multinomial distribution, otherwise the samples are drawn in chunks of
:data:`CHUNK_SIZE`, chunk ``i`` with its own child seed, so the result depends on the seed only,
never on the number of workers.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from lattimax._helpers.rng import _chunk_generators
from lattimax._helpers.validate import _check_positive_int
from lattimax.errors import CapacityError, DomainError
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.types import FractionalPoint, LatticePoint

log = logging.getLogger(__name__)

EXACT_LIMIT = 20
MULTINOMIAL_LIMIT = 16
CHUNK_SIZE = 1 << 16

Pattern = Tuple[int, ...]


def extension_exact(f: ValueOracle, x: FractionalPoint) -> float:
    """Exact value of the continuous extension by expanding all ``2^m`` rounding patterns

    ``m`` is the number of strictly fractional coordinates of ``x``.

    Raises
    ------
    CapacityError
        if ``x`` has more than 20 fractional coordinates, use :func:`extension_estimate` instead

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: min(x[0], 2), box=[3])
    >>> extension_exact(f, FractionalPoint([1.5]))
    1.5
    >>> extension_exact(f, FractionalPoint([3.0]))
    2.0
    """
    base, support, q = _split(f, x)
    if len(support) > EXACT_LIMIT:
        raise CapacityError(
            "too many fractional coordinates for the exact extension, use extension_estimate",
            estimate=len(support),
            limit=EXACT_LIMIT,
        )
    total = 0.0
    for pattern, weight in _patterns(q):
        if weight > 0:
            total += weight * f.eval(_lift(base, support, pattern))
    return total


def extension_estimate(
    f: ValueOracle, x: FractionalPoint, sample_count: int, seed: int, workers: int = 1
) -> float:
    """Mean of ``f`` over ``sample_count`` independent draws from ``D(x)``

    Deterministic for a given seed whatever ``workers`` is; exactly ``f(x)`` for integral ``x``.

    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: min(x[0], 2), box=[3])
    >>> extension_estimate(f, FractionalPoint([2.0]), sample_count=100, seed=1)
    2.0
    >>> abs(extension_estimate(f, FractionalPoint([1.5]), sample_count=10**4, seed=1) - 1.5) < 0.05
    True
    """
    _check_positive_int(sample_count, "sample_count")
    base, support, q = _split(f, x)
    if not support:
        return f.eval(base)
    counts = _pattern_counts(q, sample_count, seed, workers)
    points = [_lift(base, support, pattern) for pattern in counts]
    values = _evaluate_all(f, points, workers)
    return sum(counts[p] * v for p, v in zip(counts, values)) / sample_count


def extension_marginal_estimate(
    f: ValueOracle,
    x: FractionalPoint,
    delta: LatticePoint,
    sample_count: int,
    seed: int,
    scale: Optional[float] = None,
    workers: int = 1,
) -> float:
    """Estimate of ``F(delta | x) = E_{z ~ D(x)}[f(delta | z)]`` for integral ``delta``

    With ``scale`` (usually ``f(delta)``) every sample is divided by it and clipped to ``[0, 1]``
    before averaging, the mean is scaled back; a non-positive scale gives 0 without evaluations.

    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: x[0] + x[1], box=[3, 3])
    >>> extension_marginal_estimate(f, FractionalPoint([0.5, 1.25]), LatticePoint([1, 0]), 50, seed=3)
    1.0
    """
    _check_positive_int(sample_count, "sample_count")
    if scale is not None and scale <= 0:
        return 0.0
    base, support, q = _split(f, x)
    f.check_in_box(_ceil(x) + delta)
    counts = _pattern_counts(q, sample_count, seed, workers)
    lows = [_lift(base, support, pattern) for pattern in counts]
    highs = [low + delta for low in lows]
    values = _evaluate_all(f, lows + highs, workers)
    gains = np.array(values[len(lows) :]) - np.array(values[: len(lows)])
    if scale is not None:
        gains = np.clip(gains / scale, 0.0, 1.0)
    weights = np.array([counts[p] for p in counts], dtype=np.float64)
    mean = float(np.dot(weights, gains)) / sample_count
    return mean * scale if scale is not None else mean


def extension_gradient(f: ValueOracle, x: FractionalPoint, side: str = "+") -> np.ndarray:
    """One-sided partial derivatives ``∇F₊`` (``side="+"``) or ``∇F₋`` (``side="-"``) of ``F`` at ``x``

    At a fractional coordinate both sides agree with the partial derivative of the multilinear
    extension on the hypercube. At an integral coordinate ``i`` they are the expected unit
    marginals of ``f`` at ``⌊x⌋ + χ_S`` (right) or ``⌊x⌋ - χ_i + χ_S`` (left); the entry is ``nan``
    where the one-sided step leaves the box.

    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: min(x[0], 2), box=[3])
    >>> extension_gradient(f, FractionalPoint([2.0]), "-"), extension_gradient(f, FractionalPoint([2.0]), "+")
    (array([1.]), array([0.]))
    """
    if side not in ("+", "-"):
        raise DomainError(f"side should be '+' or '-', but it is {side!r}")
    base, support, q = _split(f, x)
    if len(support) > EXACT_LIMIT:
        raise CapacityError(
            "too many fractional coordinates for the exact gradient", estimate=len(support), limit=EXACT_LIMIT
        )
    gradient = np.full(f.n, np.nan)
    for i in range(f.n):
        if i in support:
            position = support.index(i)
            others = support[:position] + support[position + 1 :]
            rest = np.delete(q, position)
            low = base
        else:
            others = support
            rest = q
            low = base
            if side == "-":
                if base[i] == 0:
                    continue
                low = base.add_units(i, -1)
        if low[i] + 1 > f.box[i]:
            continue
        total = 0.0
        for pattern, weight in _patterns(rest):
            if weight > 0:
                point = _lift(low, others, pattern)
                total += weight * (f.eval(point.add_units(i)) - f.eval(point))
        gradient[i] = total
    return gradient


def _split(f: ValueOracle, x: FractionalPoint) -> Tuple[LatticePoint, Tuple[int, ...], np.ndarray]:
    if x.n != f.n:
        raise DomainError(f"dimensions should be equal, but they are {x.n} and {f.n}")
    base = x.floor()
    support = x.fractional_support()
    f.check_in_box(_ceil(x))
    return base, support, x.frac()[list(support)]


def _lift(base: LatticePoint, support: Tuple[int, ...], pattern: Pattern) -> LatticePoint:
    arr = base.array.copy()
    for position in pattern:
        arr[support[position]] += 1
    return LatticePoint._wrap(arr)


def _patterns(q: np.ndarray):
    """All rounding patterns (positions rounded up) with their probabilities"""
    m = len(q)
    for bits in itertools.product((0, 1), repeat=m):
        weight = 1.0
        for b, p in zip(bits, q):
            weight *= p if b else 1 - p
        yield tuple(i for i, b in enumerate(bits) if b), weight


def _pattern_counts(q: np.ndarray, sample_count: int, seed: int, workers: int) -> Dict[Pattern, int]:
    m = len(q)
    if m == 0:
        return {(): sample_count}
    if m <= MULTINOMIAL_LIMIT:
        codes = np.arange(1 << m)
        bits = (codes[:, None] >> np.arange(m)) & 1
        probabilities = np.prod(np.where(bits == 1, q, 1 - q), axis=1)
        probabilities /= probabilities.sum()
        drawn = np.random.default_rng(seed).multinomial(sample_count, probabilities)
        return {tuple(int(i) for i in np.flatnonzero(bits[c])): int(drawn[c]) for c in np.flatnonzero(drawn)}
    chunks = -(-sample_count // CHUNK_SIZE)
    sizes = [min(CHUNK_SIZE, sample_count - i * CHUNK_SIZE) for i in range(chunks)]
    generators = _chunk_generators(seed, chunks)

    def draw(i: int) -> Counter:
        rows, counts = np.unique(generators[i].random((sizes[i], m)) < q, axis=0, return_counts=True)
        return Counter({tuple(int(j) for j in np.flatnonzero(row)): int(c) for row, c in zip(rows, counts)})

    total = Counter()
    for part in _map(draw, range(chunks), workers):
        total.update(part)
    return dict(sorted(total.items()))


def _evaluate_all(f: ValueOracle, points, workers: int):
    return list(_map(f.eval, points, workers))


def _map(fn, items, workers: int):
    if workers <= 1:
        return map(fn, items)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def _ceil(x: FractionalPoint) -> LatticePoint:
    return LatticePoint._wrap(np.ceil(x.array).astype(np.int64))

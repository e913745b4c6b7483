"""Randomized pipage rounding inside the hypercube of a fractional point.

``P ∩ C(x)`` translated by ``⌊x⌋`` is the polytope of a matroid with rank :func:`translated_rank`.
Pipage moves ``⟨x⟩`` along ``chi_i`` or ``chi_i - chi_j`` until it is integral. Steps are bounded
by :meth:`PolymatroidOracle.exchange_capacity` and by the unit cube, and their sign is drawn so
that every coordinate keeps its expectation; the continuous extension is linear along ``chi_i`` and
convex along ``chi_i - chi_j`` inside a hypercube, so ``E[f(x̄)] >= F(x)``.
"""

from dataclasses import dataclass
import itertools
import logging
import time
from typing import Callable, Tuple

import numpy as np

from lattimax._helpers.rng import _derive_seed
from lattimax.errors import PreconditionError
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.types import SNAP_TOLERANCE, FractionalPoint, LatticePoint
from lattimax.result import SolverReport
from lattimax.solver.config import SolverConfig
from lattimax.solver.polymatroid.direction import continuous_greedy
from lattimax.solver.polymatroid.oracle import PolymatroidOracle, translated_rank

log = logging.getLogger(__name__)

STEP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RoundingState:
    """Fractional point split into ``base = ⌊x⌋`` and ``frac = ⟨x⟩``, ``base + frac`` lies in ``P``"""

    base: LatticePoint
    frac: np.ndarray
    translated_rank: Callable[[Tuple[int, ...]], int]

    @classmethod
    def of(cls, x: FractionalPoint, P: PolymatroidOracle) -> "RoundingState":
        base = x.floor()
        return cls(base, x.frac(), lambda subset: translated_rank(P, base, subset))

    def point(self) -> FractionalPoint:
        return FractionalPoint(self.base.array + self.frac)

    def contains(self, rounded: LatticePoint) -> bool:
        """Whether ``rounded = base + z`` with ``z`` in ``{0, 1}^n`` is in ``P``

        That is the case iff the support of ``z`` is independent in the translated matroid.
        """
        support = tuple(int(e) for e in np.flatnonzero(rounded.array - self.base.array))
        return self.translated_rank(support) == len(support)


def round_polymatroid(x: FractionalPoint, P: PolymatroidOracle, seed: int) -> LatticePoint:
    """Integral point ``⌊x⌋ + z̄`` of ``P``, ``z̄`` is the randomized pipage rounding of ``⟨x⟩``

    Every coordinate is rounded up with probability ``⟨x(i)⟩``. The output is always in ``P``
    and is deterministic given ``seed``.

    Raises
    ------
    PreconditionError
        if ``x`` isn't in ``P``

    Examples
    --------
    >>> from lattimax.instances.polymatroids import UniformPolymatroid
    >>> P = UniformPolymatroid(2, a=2, r=3)
    >>> round_polymatroid(FractionalPoint([1.0, 2.0]), P, seed=0)
    LatticePoint([1, 2])
    >>> round_polymatroid(FractionalPoint([1.5, 1.5]), P, seed=0) in {LatticePoint([1, 2]), LatticePoint([2, 1])}
    True
    """
    if x.n != P.n:
        raise PreconditionError(f"dimensions of x ({x.n}) and P ({P.n}) should be equal")
    if not P.member(x):
        raise PreconditionError(f"{x} isn't in the polymatroid")
    state = RoundingState.of(x, P)
    rng = np.random.default_rng(seed)
    w = x.array.astype(np.float64).copy()
    base = state.base.array.astype(np.float64)
    n = P.n
    guard = 4 * n * n + 16
    for _ in range(guard):
        frac = w - base
        fractional = [i for i in range(n) if SNAP_TOLERANCE < frac[i] < 1 - SNAP_TOLERANCE]
        if not fractional:
            break
        if not _single_move(P, w, base, fractional, rng) and not _pair_move(P, w, base, fractional, rng):
            log.warning("pipage found no move at %s, rounding the remaining coordinates down", w)
            break
    else:
        log.warning("pipage didn't finish in %d moves, rounding the remaining coordinates down", guard)
    result = LatticePoint._wrap(np.floor(w + SNAP_TOLERANCE).astype(np.int64))
    if not state.contains(result):
        log.warning("rounded point %s left the polymatroid, falling back to %s", result, state.base)
        return state.base
    return result


def _single_move(P, w, base, fractional, rng) -> bool:
    for i in fractional:
        up = min(P.exchange_capacity(w, i), base[i] + 1 - w[i])
        down = w[i] - base[i]
        if up > STEP_TOLERANCE:
            _random_move(w, i, None, up, down, rng)
            return True
    return False


def _pair_move(P, w, base, fractional, rng) -> bool:
    for i, j in itertools.combinations(fractional, 2):
        # + moves along chi_i - chi_j, - along chi_j - chi_i
        plus = min(P.exchange_capacity(w, i, j), base[i] + 1 - w[i], w[j] - base[j])
        minus = min(P.exchange_capacity(w, j, i), base[j] + 1 - w[j], w[i] - base[i])
        if plus > STEP_TOLERANCE and minus > STEP_TOLERANCE:
            _random_move(w, i, j, plus, minus, rng)
            return True
    return False


def _random_move(w, i, j, plus, minus, rng):
    # E[move] = plus * minus / (plus + minus) - minus * plus / (plus + minus) = 0
    t = plus if rng.random() < minus / (plus + minus) else -minus
    w[i] += t
    if j is not None:
        w[j] -= t
    for k in (i, j):
        if k is not None:
            nearest = round(w[k])
            if abs(w[k] - nearest) <= SNAP_TOLERANCE:
                w[k] = nearest


def maximize_polymatroid(
    f: ValueOracle, P: PolymatroidOracle, cfg: SolverConfig, repeats: int = 1, workers: int = 1
) -> Tuple[LatticePoint, SolverReport]:
    """Continuous greedy followed by pipage rounding, the best of ``repeats`` independent runs

    With one run the result is a ``(1 - 1/e - O(epsilon))`` approximation with probability
    at least 2/3, repeating amplifies the probability.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> from lattimax.instances.polymatroids import UniformPolymatroid
    >>> f = FunctionOracle(lambda x: 0.0, box=[1, 1])
    >>> maximize_polymatroid(f, UniformPolymatroid(2, 1, 1), SolverConfig(0.25))[0]
    LatticePoint([0, 0])
    """
    if repeats < 1:
        raise PreconditionError(f"repeats should be positive, but it is {repeats}")
    start_calls = f.call_count
    started = time.perf_counter()
    best = None
    for attempt in range(repeats):
        seed = cfg.seed if attempt == 0 else _derive_seed(cfg.seed, attempt)
        run_cfg = SolverConfig(cfg.epsilon, seed)
        x = continuous_greedy(f, P, run_cfg, workers)
        rounded = round_polymatroid(x, P, _derive_seed(seed, 0))
        value = f.eval(rounded)
        log.debug("attempt %d: x=%s rounded=%s value=%.6g", attempt, x, rounded, value)
        if best is None or value > best[1]:
            best = (rounded, value)
    solution, value = best
    report = SolverReport(
        algorithm="polymatroid",
        epsilon=cfg.effective_epsilon,
        seed=cfg.seed,
        solution=solution,
        value=value,
        oracle_calls=f.call_count - start_calls,
        wall_time_ms=round((time.perf_counter() - started) * 1000),
    )
    return solution, report

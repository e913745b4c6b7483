"""Continuous greedy over a polymatroid.

Every step of :func:`continuous_greedy` asks :func:`direction_polymatroid` for an integral
direction ``y`` with ``x + y`` in ``P`` that is greedy with respect to the continuous extension,
then moves to ``x + epsilon y``. Marginals of the extension are estimated by sampling in
:func:`binary_search_polymatroid`.
"""

from dataclasses import dataclass
import logging
import math

from lattimax._helpers.rng import _derive_seed
from lattimax._helpers.validate import _check_element, _check_non_negative_int
from lattimax.errors import ConfigError, PreconditionError
from lattimax.lattice.oracle import ValueOracle
from lattimax.lattice.types import FractionalPoint, LatticePoint, scaled
from lattimax.solver.config import SolverConfig, thresholds
from lattimax.solver.polymatroid.extension import extension_marginal_estimate
from lattimax.solver.polymatroid.oracle import PolymatroidOracle, k_max_in_polymatroid

log = logging.getLogger(__name__)

FIXPOINT_ITERATIONS = 50


@dataclass(frozen=True)
class EstimatorParams:
    """Accuracy of the sampled marginals

    Relative error ``alpha``, additive error ``beta``, failure probability ``delta``.

    >>> EstimatorParams(0.25, 0.1, 0.1).samples(4)
    526
    """

    alpha: float
    beta: float
    delta: float

    def __post_init__(self):
        if not 0 < self.alpha < 0.5:
            raise ConfigError(f"alpha should be in (0, 1/2), but it is {self.alpha}")
        for name in ("beta", "delta"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ConfigError(f"{name} should be in (0, 1), but it is {value}")

    def samples(self, k_max: int) -> int:
        """``ceil(3 ln(2 max(k_max, 2) / delta) / (alpha beta))``, non-decreasing in ``k_max``"""
        return max(1, math.ceil(3 * math.log(2 * max(k_max, 2) / self.delta) / (self.alpha * self.beta)))


@dataclass(frozen=True)
class DirectionConfig:
    """Parameters of one direction search

    ``N`` is the fixpoint of ``N = n ceil(log_{1/(1-epsilon)}(N / epsilon))`` reached from ``N = n``;
    the estimator uses ``alpha = epsilon``, ``beta = epsilon / (2 N (n + 1))`` and ``delta = epsilon / (3 N)``.

    Examples
    --------
    >>> DirectionConfig(0.25, 3).N
    57
    """

    epsilon: float
    n: int

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise ConfigError(f"epsilon of the polymatroid solver should be in (0, 1/2), but it is {self.epsilon}")
        _check_non_negative_int(self.n, "n")

    @property
    def N(self) -> int:
        return _fixpoint(self.n, self.epsilon)

    @property
    def estimator(self) -> EstimatorParams:
        N = self.N
        return EstimatorParams(
            alpha=self.epsilon,
            beta=self.epsilon / (2 * N * (self.n + 1)),
            delta=self.epsilon / (3 * N),
        )


def _fixpoint(n: int, epsilon: float) -> int:
    base = 1 / (1 - epsilon)
    N = n
    for _ in range(FIXPOINT_ITERATIONS):
        following = n * math.ceil(math.log(N / epsilon, base))
        if following == N:
            return N
        N = following
    log.warning("N didn't converge in %d iterations for n=%d, epsilon=%s, using %d", FIXPOINT_ITERATIONS, n, epsilon, N)
    return N


def binary_search_polymatroid(
    f: ValueOracle,
    x: FractionalPoint,
    e: int,
    theta: float,
    params: EstimatorParams,
    k_max: int,
    seed: int,
    workers: int = 1,
) -> int:
    """Largest step ``k <= k_max`` whose estimated average gain ``F(k chi_e | x) / k`` reaches ``theta``

    Binary search over ``[1, k_max]`` testing ``F̃(m chi_e | x) >= m theta``, where ``F̃`` averages
    ``params.samples(k_max)`` samples of ``f(m chi_e | z)`` scaled by ``f(m chi_e)``. Returns 0 when
    even ``m = 1`` fails.

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> f = FunctionOracle(lambda x: float(x[0]), box=[6])
    >>> params = EstimatorParams(0.1, 0.1, 0.1)
    >>> binary_search_polymatroid(f, FractionalPoint([0.5]), 0, 0.9, params, k_max=5, seed=0)
    5
    >>> binary_search_polymatroid(f, FractionalPoint([0.5]), 0, 1.5, params, k_max=5, seed=0)
    0
    """
    _check_element(e, f.n)
    _check_non_negative_int(k_max, "k_max")
    sample_count = params.samples(k_max)
    lo, hi = 1, k_max + 1
    query = 0
    while lo < hi:
        m = (lo + hi) // 2
        step = LatticePoint.unit(f.n, e, m)
        estimate = extension_marginal_estimate(
            f, x, step, sample_count, seed=_derive_seed(seed, query), scale=f.eval(step), workers=workers
        )
        if estimate >= m * theta:
            lo = m + 1
        else:
            hi = m
        query += 1
    return lo - 1


def direction_polymatroid(
    f: ValueOracle,
    x: FractionalPoint,
    cfg: DirectionConfig,
    P: PolymatroidOracle,
    seed: int,
    workers: int = 1,
) -> LatticePoint:
    """Integral direction ``y`` with ``x + y`` in ``P``, built by decreasing threshold greedy

    Thresholds go from ``d = max_e f(chi_e)`` down to ``epsilon d / N``. For every element the step
    is bounded by membership of ``x + y + k chi_e`` and by the oracle box, its size is chosen by
    :func:`binary_search_polymatroid` with the marginals estimated at ``x + epsilon y``.

    Raises
    ------
    PreconditionError
        if ``x`` isn't in ``P``

    Examples
    --------
    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> from lattimax.instances.polymatroids import UniformPolymatroid
    >>> f = FunctionOracle(lambda x: float(x[0] + x[1]), box=[2, 2])
    >>> P = UniformPolymatroid(2, 2, 0)
    >>> direction_polymatroid(f, FractionalPoint.zeros(2), DirectionConfig(0.25, 2), P, seed=0)
    LatticePoint([0, 0])
    """
    if x.n != P.n or x.n != f.n:
        raise PreconditionError(f"dimensions of x ({x.n}), P ({P.n}) and f ({f.n}) should be equal")
    if not P.member(x):
        raise PreconditionError(f"{x} isn't in the polymatroid")
    eps = cfg.epsilon
    N = cfg.N
    params = cfg.estimator
    n = f.n
    box = f.box.array
    y = LatticePoint.zeros(n)
    elements = [e for e in range(n) if box[e] >= 1]
    if not elements:
        return y
    d = max(f.eval(LatticePoint.unit(n, e)) for e in elements)
    if d <= 0:
        return y
    for j, theta in enumerate(thresholds(d, eps * d / N, eps)):
        for e in elements:
            current = x + y
            hard_cap = math.floor(box[e] - current[e] + 1e-9)
            if hard_cap <= 0:
                continue
            k_max = k_max_in_polymatroid(P, current, e, hard_cap)
            if k_max == 0:
                continue
            anchor = x + scaled(y, eps)
            k = binary_search_polymatroid(f, anchor, e, theta, params, k_max, _derive_seed(seed, j, e), workers)
            if k >= 1:
                y = y.add_units(e, k)
        log.debug("theta %.6g: y=%s", theta, y)
    return y


def continuous_greedy(f: ValueOracle, P: PolymatroidOracle, cfg: SolverConfig, workers: int = 1) -> FractionalPoint:
    """Fractional point ``x = epsilon (y^1 + ... + y^{1/epsilon})`` of ``P``

    With probability at least 2/3 the continuous extension at ``x`` is a ``(1 - 1/e - O(epsilon))``
    approximation of the optimum over the integral points of ``P``. Membership of every
    intermediate point is checked.

    >>> from lattimax.lattice.oracle import FunctionOracle
    >>> from lattimax.instances.polymatroids import UniformPolymatroid
    >>> f = FunctionOracle(lambda x: 0.0, box=[2, 2])
    >>> continuous_greedy(f, UniformPolymatroid(2, 1, 1), SolverConfig(0.25))
    FractionalPoint([0.0, 0.0])
    """
    eps = cfg.effective_epsilon
    direction_cfg = DirectionConfig(eps, f.n)
    x = FractionalPoint.zeros(f.n)
    for t in range(1, round(1 / eps) + 1):
        y = direction_polymatroid(f, x, direction_cfg, P, _derive_seed(cfg.seed, t), workers)
        x = x + scaled(y, eps)
        if not P.member(x):
            raise PreconditionError(f"step {t} left the polymatroid at {x}, is P convex and downward closed?")
        log.debug("step %d: x=%s", t, x)
    return x

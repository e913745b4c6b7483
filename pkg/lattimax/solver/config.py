from dataclasses import dataclass, field
import math
from typing import Iterator, List, NamedTuple, Optional

from lattimax.errors import ConfigError

INTEGRALITY_SLACK = 1e-9


@dataclass(frozen=True)
class SolverConfig:
    """Accuracy and seed shared by all solvers

    The algorithms assume ``1 / epsilon`` is an integer, otherwise ``epsilon`` is reduced
    to ``1 / ceil(1 / epsilon)``, see :attr:`effective_epsilon`.

    Parameters
    ----------
    epsilon: float
        accuracy parameter in ``(0, 1)``
    seed: int
        seed for the randomized solvers, deterministic solvers only report it

    Examples
    --------
    >>> SolverConfig(0.1).effective_epsilon
    0.1
    >>> SolverConfig(0.3).effective_epsilon
    0.25
    """

    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.epsilon, (int, float)) or not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon should be in (0, 1), but it is {self.epsilon!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ConfigError(f"seed should be an integer, but it is {self.seed!r}")

    @property
    def effective_epsilon(self) -> float:
        return 1 / math.ceil(1 / self.epsilon - INTEGRALITY_SLACK)


def thresholds(start: float, stop: float, epsilon: float) -> Iterator[float]:
    """Decreasing thresholds ``start * (1 - epsilon) ** j`` while they are ``>= stop``

    Powers are taken from the integer ``j`` so no drift is accumulated.

    >>> [round(t, 6) for t in thresholds(1.0, 0.5, 0.25)]
    [1.0, 0.75, 0.5625]
    """
    assert start > 0 and 0 < epsilon < 1
    j = 0
    while True:
        theta = start * (1 - epsilon) ** j
        if theta < stop:
            return
        yield theta
        j += 1


class TraceStep(NamedTuple):
    theta: float
    element: int
    k: int
    gain: float
    accepted: bool = True


@dataclass
class GreedyTrace:
    """Steps of a decreasing threshold greedy run, thresholds never increase along the trace

    Failed knapsack trials are recorded with ``accepted=False``.
    """

    steps: List[TraceStep] = field(default_factory=list)

    def record(self, theta: float, element: int, k: int, gain: float, accepted: bool = True):
        assert not self.steps or theta <= self.steps[-1].theta, "thresholds should not increase"
        self.steps.append(TraceStep(theta, element, k, gain, accepted))

    @property
    def accepted(self) -> List[TraceStep]:
        return [s for s in self.steps if s.accepted]

    @property
    def rejected(self) -> List[TraceStep]:
        return [s for s in self.steps if not s.accepted]

    @property
    def last_theta(self) -> Optional[float]:
        return self.steps[-1].theta if self.steps else None

    def __len__(self):
        return len(self.steps)

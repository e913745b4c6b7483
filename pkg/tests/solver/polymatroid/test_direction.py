import numpy as np
import pytest

from lattimax.errors import ConfigError, PreconditionError
from lattimax.instances import PartitionPolymatroid, UniformPolymatroid
from lattimax.lattice import FractionalPoint, FunctionOracle, LatticePoint
from lattimax.solver import SolverConfig
from lattimax.solver.polymatroid import (
    DirectionConfig,
    EstimatorParams,
    binary_search_polymatroid,
    continuous_greedy,
    direction_polymatroid,
)


def sqrt_sum(box):
    return FunctionOracle(lambda x: float(np.sum(np.sqrt(x.array))), box=box)


class TestEstimatorParams:
    def test_samples(self):
        assert EstimatorParams(0.25, 0.1, 0.1).samples(4) == 526
        params = EstimatorParams(0.25, 0.1, 0.1)
        assert params.samples(0) == params.samples(1) == params.samples(2)

    def test_samples_grow_with_k_max(self):
        params = EstimatorParams(0.1, 0.05, 0.2)
        counts = [params.samples(k) for k in range(0, 200, 7)]
        assert counts == sorted(counts)

    @pytest.mark.parametrize(
        "alpha, beta, delta, message",
        [
            (0.5, 0.1, 0.1, "alpha should be in"),
            (0, 0.1, 0.1, "alpha should be in"),
            (0.25, 1, 0.1, "beta should be in"),
            (0.25, 0.1, 0, "delta should be in"),
        ],
    )
    def test_bad_values(self, alpha, beta, delta, message):
        with pytest.raises(ConfigError, match=message):
            EstimatorParams(alpha, beta, delta)


class TestDirectionConfig:
    def test_fixpoint(self):
        assert DirectionConfig(0.25, 3).N == 57

    def test_fixpoint_is_stable(self):
        cfg = DirectionConfig(0.1, 5)
        N = cfg.N
        assert N == 5 * int(np.ceil(np.log(N / 0.1) / np.log(1 / 0.9)))

    def test_estimator(self):
        cfg = DirectionConfig(0.25, 3)
        assert cfg.estimator == EstimatorParams(0.25, 0.25 / (2 * 57 * 4), 0.25 / (3 * 57))

    @pytest.mark.parametrize("epsilon", [0.5, 0.75, 0])
    def test_bad_epsilon(self, epsilon):
        with pytest.raises(ConfigError, match=r"epsilon of the polymatroid solver should be in \(0, 1/2\)"):
            DirectionConfig(epsilon, 3)


class TestBinarySearch:
    def test_linear(self):
        f = FunctionOracle(lambda x: float(x[0]), box=[6])
        params = EstimatorParams(0.1, 0.1, 0.1)
        assert binary_search_polymatroid(f, FractionalPoint([0.5]), 0, 0.9, params, k_max=5, seed=0) == 5
        assert binary_search_polymatroid(f, FractionalPoint([0.5]), 0, 1.5, params, k_max=5, seed=0) == 0

    def test_saturated(self):
        f = FunctionOracle(lambda x: float(min(x[0], 3)), box=[6])
        params = EstimatorParams(0.1, 0.1, 0.1)
        assert binary_search_polymatroid(f, FractionalPoint([0.0]), 0, 0.5, params, k_max=6, seed=0) == 6
        assert binary_search_polymatroid(f, FractionalPoint([0.0]), 0, 0.9, params, k_max=6, seed=0) == 3

    def test_zero_k_max(self):
        f = FunctionOracle(lambda x: float(x[0]), box=[2])
        params = EstimatorParams(0.1, 0.1, 0.1)
        assert binary_search_polymatroid(f, FractionalPoint([0.0]), 0, 0.5, params, k_max=0, seed=0) == 0
        assert f.call_count == 0


class TestDirection:
    @pytest.mark.parametrize(
        "P",
        [UniformPolymatroid(3, a=2, r=4), PartitionPolymatroid([(0, 1), (2,)], caps=[3, 1])],
        ids=repr,
    )
    @pytest.mark.parametrize("start", [[0.0, 0.0, 0.0], [0.5, 0.25, 1.0]])
    def test_stays_inside(self, P, start):
        f = sqrt_sum([3, 3, 3])
        x = FractionalPoint(start)
        y = direction_polymatroid(f, x, DirectionConfig(0.25, 3), P, seed=1)
        assert P.member(x + y)

    def test_modular_fills_best_element(self):
        f = FunctionOracle(lambda x: 3.0 * x[0] + x[1], box=[2, 2])
        y = direction_polymatroid(f, FractionalPoint.zeros(2), DirectionConfig(0.25, 2), UniformPolymatroid(2, 2, 2), 0)
        assert y == LatticePoint([2, 0])

    def test_zero_rank(self):
        f = sqrt_sum([2, 2])
        y = direction_polymatroid(f, FractionalPoint.zeros(2), DirectionConfig(0.25, 2), UniformPolymatroid(2, 2, 0), 0)
        assert y.is_zero()

    def test_outside(self):
        with pytest.raises(PreconditionError, match="isn't in the polymatroid"):
            direction_polymatroid(
                sqrt_sum([2, 2]), FractionalPoint([1.5, 1.0]), DirectionConfig(0.25, 2), UniformPolymatroid(2, 2, 2), 0
            )

    def test_dimensions(self):
        with pytest.raises(PreconditionError, match="should be equal"):
            direction_polymatroid(
                sqrt_sum([2]), FractionalPoint([0.0, 0.0]), DirectionConfig(0.25, 2), UniformPolymatroid(2, 2, 2), 0
            )


class TestContinuousGreedy:
    @pytest.mark.parametrize("seed", range(3))
    def test_result_in_polymatroid(self, seed):
        P = UniformPolymatroid(3, a=2, r=3)
        x = continuous_greedy(sqrt_sum([2, 2, 2]), P, SolverConfig(0.25, seed))
        assert P.member(x)
        assert 0 < x.total() <= 3 + 1e-9

    def test_deterministic(self):
        P = PartitionPolymatroid([(0, 1), (2,)], caps=[2, 1])
        first = continuous_greedy(sqrt_sum([2, 2, 2]), P, SolverConfig(0.25, 7))
        second = continuous_greedy(sqrt_sum([2, 2, 2]), P, SolverConfig(0.25, 7))
        assert first == second

    def test_large_epsilon(self):
        with pytest.raises(ConfigError, match="polymatroid solver"):
            continuous_greedy(sqrt_sum([2, 2]), UniformPolymatroid(2, 1, 1), SolverConfig(0.5))

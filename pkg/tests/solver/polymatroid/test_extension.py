import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from lattimax.errors import CapacityError, DomainError
from lattimax.instances import make_budget_allocation, random_budget_allocation
from lattimax.lattice import FractionalPoint, FunctionOracle, LatticePoint, TableOracle
from lattimax.lattice.operations import box_points
import lattimax.solver.polymatroid.extension as extension
from lattimax.solver.polymatroid import (
    EstimatorParams,
    extension_estimate,
    extension_exact,
    extension_gradient,
    extension_marginal_estimate,
)


def sqrt_sum(box):
    return FunctionOracle(lambda x: float(np.sum(np.sqrt(x.array))), box=box)


def saturated(box, level=3):
    return FunctionOracle(lambda x: float(min(x.total(), level)), box=box)


def allocation(cap=(3, 3, 3)):
    edges = [(0, 0, 0.3), (1, 0, 0.5), (1, 1, 0.4), (2, 1, 0.6), (2, 2, 0.2)]
    return make_budget_allocation(edges[: 2 * len(cap) - 1], cap, targets=len(cap))


class TestExact:
    def test_integral_points(self):
        f = random_budget_allocation(3, 4, 3, seed=1)
        for x in box_points(f.box):
            assert extension_exact(f, FractionalPoint(x)) == f(x)

    def test_multilinear_on_unit_square(self):
        f = TableOracle([[0, 1], [2, 2.5]])
        p, q = 0.3, 0.8
        expected = (1 - p) * q * 1 + p * (1 - q) * 2 + p * q * 2.5
        assert extension_exact(f, FractionalPoint([p, q])) == pytest.approx(expected)

    def test_glued_cubes(self):
        f = FunctionOracle(lambda x: min(x[0], 2), box=[3])
        assert extension_exact(f, FractionalPoint([1.5])) == 1.5
        assert extension_exact(f, FractionalPoint([2.5])) == 2.0

    @settings(deadline=None, max_examples=40)
    @given(
        st.lists(st.floats(0, 1.4), min_size=3, max_size=3),
        st.lists(st.floats(0, 1.4), min_size=3, max_size=3),
    )
    def test_concave_along_positive_directions(self, start, direction):
        f = saturated([4, 4, 4])
        a = np.array(start)
        b = a + np.array(direction)
        values = [extension_exact(f, FractionalPoint(p)) for p in (a, (a + b) / 2, b)]
        assert values[1] >= (values[0] + values[2]) / 2 - 1e-9

    def test_too_many_fractional_coordinates(self):
        f = sqrt_sum([1] * 21)
        with pytest.raises(CapacityError, match="use extension_estimate"):
            extension_exact(f, FractionalPoint([0.5] * 21))

    def test_outside_box(self):
        with pytest.raises(DomainError, match="exceeds the box"):
            extension_exact(sqrt_sum([1]), FractionalPoint([1.5]))

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError, match="dimensions should be equal"):
            extension_exact(sqrt_sum([1, 1]), FractionalPoint([0.5]))


class TestEstimate:
    def test_integral_point_is_exact(self):
        f = sqrt_sum([3, 3])
        assert extension_estimate(f, FractionalPoint([2.0, 1.0]), sample_count=10, seed=0) == f(LatticePoint([2, 1]))
        assert f.call_count == 2

    def test_deterministic(self):
        f = sqrt_sum([2, 2, 2])
        x = FractionalPoint([0.5, 1.25, 0.75])
        assert extension_estimate(f, x, 500, seed=4) == extension_estimate(f, x, 500, seed=4)

    def test_concentration(self):
        f = random_budget_allocation(4, 5, 3, seed=2)
        x = FractionalPoint([0.5, 0.25, 0.75, 0.1])
        exact = extension_exact(f, x)
        assert abs(extension_estimate(f, x, 20000, seed=0) - exact) < 0.05 * max(exact, 1.0)

    def test_failure_rate(self):
        params = EstimatorParams(0.25, 0.1, 0.1)
        sample_count = params.samples(4)
        assert sample_count == 526
        f = random_budget_allocation(4, 5, 3, seed=2)
        x = FractionalPoint([0.5, 0.25, 0.75, 0.1])
        exact = extension_exact(f, x)
        scale = f(LatticePoint(np.ceil(x.array)))
        trials = 1000
        misses = sum(
            abs(extension_estimate(f, x, sample_count, seed) - exact) > params.alpha * exact + params.beta * scale
            for seed in range(trials)
        )
        assert misses < 2 * params.delta * trials

    def test_few_evaluations(self):
        f = sqrt_sum([2, 2])
        extension_estimate(f, FractionalPoint([0.5, 1.5]), 10**5, seed=0)
        assert f.call_count <= 4

    @pytest.mark.parametrize("workers", [2, 4])
    def test_chunks_ignore_workers(self, monkeypatch, workers):
        monkeypatch.setattr(extension, "CHUNK_SIZE", 100)
        x = FractionalPoint([0.5] * 17)
        sequential = extension_estimate(sqrt_sum([1] * 17), x, 350, seed=9)
        parallel = extension_estimate(sqrt_sum([1] * 17), x, 350, seed=9, workers=workers)
        assert sequential == parallel
        assert sequential == pytest.approx(17 * 0.5, abs=0.5)

    def test_bad_sample_count(self):
        with pytest.raises(DomainError, match="sample_count should be positive"):
            extension_estimate(sqrt_sum([1]), FractionalPoint([0.5]), 0, seed=0)


class TestMarginalEstimate:
    def test_linear(self):
        f = FunctionOracle(lambda x: float(x[0] + x[1]), box=[3, 3])
        x = FractionalPoint([0.5, 1.25])
        assert extension_marginal_estimate(f, x, LatticePoint([1, 0]), 50, seed=3) == 1.0
        assert extension_marginal_estimate(f, x, LatticePoint([1, 1]), 50, seed=3, scale=2.0) == 2.0

    @pytest.mark.parametrize("scale", [0.0, -1.0])
    def test_non_positive_scale(self, scale):
        f = sqrt_sum([3, 3])
        estimate = extension_marginal_estimate(f, FractionalPoint([0.5, 0.5]), LatticePoint([1, 0]), 50, 0, scale)
        assert estimate == 0.0
        assert f.call_count == 0

    def test_clipped_by_scale(self):
        f = sqrt_sum([3, 3])
        x = FractionalPoint([0.5, 0.5])
        delta = LatticePoint([2, 0])
        estimate = extension_marginal_estimate(f, x, delta, 200, seed=1, scale=0.5)
        assert 0 <= estimate <= 0.5

    def test_step_outside_box(self):
        with pytest.raises(DomainError, match="exceeds the box"):
            extension_marginal_estimate(sqrt_sum([2]), FractionalPoint([1.5]), LatticePoint([1]), 10, seed=0)

    def test_matches_exact(self):
        f = allocation()
        x = FractionalPoint([0.5, 0.25, 0.75])
        delta = LatticePoint([1, 0, 1])
        lifted = FractionalPoint(x.array + delta.array)
        exact = extension_exact(f, lifted) - extension_exact(f, x)
        assert extension_marginal_estimate(f, x, delta, 20000, seed=2) == pytest.approx(exact, abs=0.05)


class TestGradient:
    def test_example(self):
        f = FunctionOracle(lambda x: min(x[0], 2), box=[3])
        np.testing.assert_array_equal(extension_gradient(f, FractionalPoint([2.0]), "-"), [1.0])
        np.testing.assert_array_equal(extension_gradient(f, FractionalPoint([2.0]), "+"), [0.0])

    def test_box_edges(self):
        f = sqrt_sum([2])
        assert math.isnan(extension_gradient(f, FractionalPoint([0.0]), "-")[0])
        assert math.isnan(extension_gradient(f, FractionalPoint([2.0]), "+")[0])

    def test_fractional_sides_agree(self):
        f = allocation()
        x = FractionalPoint([0.5, 1.25, 0.75])
        np.testing.assert_allclose(extension_gradient(f, x, "-"), extension_gradient(f, x, "+"))

    @pytest.mark.parametrize("point", [[1.0, 0.5, 2.0], [2.0, 1.0, 0.25], [1.0, 1.0, 1.0]])
    def test_left_dominates_right(self, point):
        f = allocation()
        x = FractionalPoint(point)
        left = extension_gradient(f, x, "-")
        right = extension_gradient(f, x, "+")
        both = ~np.isnan(left) & ~np.isnan(right)
        assert np.all(left[both] >= right[both] - 1e-12)

    def test_bad_side(self):
        with pytest.raises(DomainError, match="side should be"):
            extension_gradient(sqrt_sum([1]), FractionalPoint([0.5]), "left")

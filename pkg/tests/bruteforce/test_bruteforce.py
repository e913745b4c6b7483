import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from lattimax.bruteforce import ExactResult, brute_force_opt, certify_ratio, feasible_region
from lattimax.errors import CapacityError, DomainError, PreconditionError
from lattimax.instances import UniformPolymatroid, make_separable_concave, random_separable_concave
from lattimax.lattice import FunctionOracle, LatticePoint
from lattimax.solver import CardinalityConstraint, KnapsackInstance


def modular(weights, box):
    return FunctionOracle(lambda x: float(np.dot(weights, x.array)), box=box)


class TestBruteForce:
    def test_knapsack(self):
        f = modular([3, 1], [2, 2])
        assert brute_force_opt(f, KnapsackInstance([0.5, 0.5], cap=[2, 2])) == ExactResult(6.0, LatticePoint([2, 0]), 6)

    def test_cardinality(self):
        f = modular([3, 2, 1], [2, 2, 2])
        result = brute_force_opt(f, CardinalityConstraint([2, 2, 2], budget=3))
        assert result.opt_value == 8.0
        assert result.argmax == LatticePoint([2, 1, 0])

    def test_counts_feasible_points(self):
        f = modular([1, 1], [2, 3])
        cst = CardinalityConstraint([2, 3], budget=3)
        assert brute_force_opt(f, cst).points_enumerated == 9
        assert feasible_region(cst, f).estimate == 9

    def test_polymatroid(self):
        f = make_separable_concave([1.0, 0.8], [0.5, 1.0], cap=[2, 2])
        result = brute_force_opt(f, UniformPolymatroid(2, a=2, r=3))
        assert result.argmax == LatticePoint([1, 2])
        assert result.opt_value == pytest.approx(2.6)

    def test_lexicographic_tie(self):
        f = modular([1, 1], [1, 1])
        assert brute_force_opt(f, CardinalityConstraint([1, 1], budget=1)).argmax == LatticePoint([0, 1])

    def test_zero_budget(self):
        f = modular([1, 1], [1, 1])
        assert brute_force_opt(f, CardinalityConstraint([1, 1], budget=0)) == ExactResult(0.0, LatticePoint([0, 0]), 1)

    @settings(deadline=None, max_examples=30)
    @given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 8), st.integers(0, 10**6))
    def test_prune_and_workers_agree(self, n, cap_max, budget, seed):
        f = random_separable_concave(n, cap_max, seed)
        cst = CardinalityConstraint(f.box, budget)
        pruned = brute_force_opt(f, cst)
        assert brute_force_opt(f, cst, prune=False) == pruned
        assert brute_force_opt(f, cst, workers=3) == pruned

    def test_knapsack_scan_agrees(self):
        f = random_separable_concave(3, 4, seed=2)
        inst = KnapsackInstance([0.3, 0.25, 0.45], cap=f.box)
        assert brute_force_opt(f, inst, prune=False) == brute_force_opt(f, inst)

    def test_too_large(self):
        f = FunctionOracle(lambda x: 0.0, box=[400, 400, 400])
        with pytest.raises(CapacityError, match="feasible region is too large to enumerate") as info:
            brute_force_opt(f, CardinalityConstraint(f.box, budget=1200))
        assert info.value.limit == 10**7
        assert info.value.estimate > 10**7

    def test_custom_limit(self):
        f = modular([1, 1], [2, 3])
        with pytest.raises(CapacityError):
            brute_force_opt(f, CardinalityConstraint([2, 3], budget=3), limit=5)

    def test_unsupported(self):
        with pytest.raises(DomainError, match="unsupported constraint str"):
            brute_force_opt(modular([1], [1]), "budget")

    def test_cap_exceeds_box(self):
        with pytest.raises(PreconditionError, match="exceeds the oracle box"):
            brute_force_opt(modular([1], [1]), CardinalityConstraint([2], budget=1))

    def test_polymatroid_dimension(self):
        with pytest.raises(PreconditionError, match="oracle has 1 elements, but the polymatroid has 2"):
            brute_force_opt(modular([1], [1]), UniformPolymatroid(2, 1, 1))


class TestCertifyRatio:
    @pytest.mark.parametrize(
        "value, opt, bound, expected",
        [
            (0.63, 1.0, 1 - 1 / math.e, False),
            (0.64, 1.0, 1 - 1 / math.e, True),
            (0.0, 0.0, 0.9, True),
            (0.5, 1.0, 0.5, True),
        ],
    )
    def test_ratio(self, value, opt, bound, expected):
        assert certify_ratio(value, ExactResult(opt, LatticePoint([1]), 2), bound) is expected

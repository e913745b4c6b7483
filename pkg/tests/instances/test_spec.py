import pytest

from lattimax.errors import DomainError
from lattimax.instances import ALGORITHMS, FAMILIES, InstanceSpec, UniformPolymatroid
from lattimax.lattice import LatticePoint
from lattimax.solver import CardinalityConstraint, KnapsackInstance

MODULAR = {"coeffs": [3, 1], "powers": [1, 1], "cap": [2, 2]}


def spec(constraint=None, family="separable_concave", params=MODULAR, seed=0):
    return InstanceSpec("modular", family, params, seed, constraint or {})


class TestBuild:
    def test_default_is_cardinality_over_the_box(self):
        f, cst = spec({"budget": 3}).build()
        assert isinstance(cst, CardinalityConstraint)
        assert cst.cap == f.box == LatticePoint([2, 2])
        assert cst.budget == 3
        assert spec({"budget": 3}).constraint_kind == "cardinality"

    def test_cardinality_with_cap(self):
        _, cst = spec({"kind": "cardinality", "budget": 2, "cap": [1, 2]}).build()
        assert cst.cap == LatticePoint([1, 2])

    def test_knapsack_weights(self):
        _, inst = spec({"kind": "knapsack", "weights": [0.5, 0.5]}).build()
        assert inst == KnapsackInstance((0.5, 0.5), LatticePoint([2, 2]))

    def test_knapsack_raw_weights(self):
        _, inst = spec({"kind": "knapsack", "raw_weights": [1, 4], "budget": 4, "cap": [1, 1]}).build()
        assert inst.weights == (0.25, 1.0)
        assert inst.cap == LatticePoint([1, 1])

    def test_polymatroid(self):
        _, P = spec({"kind": "polymatroid", "family": "uniform", "n": 2, "a": 2, "r": 3}).build()
        assert isinstance(P, UniformPolymatroid)
        assert P.rank_total == 3

    def test_fresh_oracles(self):
        s = spec({"budget": 1})
        f, _ = s.build()
        f(LatticePoint([1, 1]))
        g, _ = s.build()
        assert g is not f
        assert g.call_count == 0

    @pytest.mark.parametrize(
        "family, params",
        [
            ("budget_allocation", {"edges": [[0, 0, 0.5]], "cap": [2]}),
            ("lattice_table", {"table": [[0, 2, 4], [1, 2, 4], [4, 5, 7]]}),
            ("lattice_fixture", {"name": "convex_pair"}),
            ("random_separable_concave", {"n": 3, "cap_max": 2}),
            ("random_budget_allocation", {"sources": 2, "targets": 3, "cap_max": 2}),
            ("random_lattice_table", {"shape": [3, 2]}),
        ],
    )
    def test_families(self, family, params):
        f = spec({"budget": 1}, family, params, seed=3).build_oracle()
        assert f(LatticePoint.zeros(f.n)) == 0.0

    def test_every_family_is_listed(self):
        assert set(FAMILIES) == {
            "separable_concave",
            "budget_allocation",
            "lattice_table",
            "lattice_fixture",
            "random_separable_concave",
            "random_budget_allocation",
            "random_lattice_table",
        }
        assert set(ALGORITHMS.values()) == {"cardinality", "polymatroid", "knapsack"}


class TestErrors:
    def test_unknown_family(self):
        with pytest.raises(DomainError, match="unknown family 'convex'"):
            spec(family="convex").build()

    def test_missing_family_parameter(self):
        with pytest.raises(DomainError, match="family random_separable_concave needs parameter 'cap_max'"):
            spec(family="random_separable_concave", params={"n": 2}).build()

    @pytest.mark.parametrize(
        "constraint, message",
        [
            ({"kind": "cardinality"}, "cardinality constraint needs parameter 'budget'"),
            ({"kind": "knapsack"}, "knapsack constraint needs parameter 'weights'"),
            ({"kind": "knapsack", "raw_weights": [1, 1]}, "knapsack constraint needs parameter 'budget'"),
            ({"kind": "polymatroid", "n": 2}, "polymatroid constraint needs parameter 'family'"),
            ({"kind": "polymatroid", "family": "uniform", "n": 2}, "polymatroid constraint needs parameter 'a'"),
            ({"kind": "matroid"}, "unknown constraint kind 'matroid'"),
        ],
    )
    def test_bad_constraint(self, constraint, message):
        with pytest.raises(DomainError, match=message):
            spec(constraint).build()


def test_to_dict():
    s = InstanceSpec("pantry", "separable_concave", MODULAR, 5, {"kind": "knapsack", "weights": [0.5, 0.5]})
    assert s.to_dict() == {
        "id": "pantry",
        "family": "separable_concave",
        "params": MODULAR,
        "seed": 5,
        "constraint": {"kind": "knapsack", "weights": [0.5, 0.5]},
    }

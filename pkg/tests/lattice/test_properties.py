import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from lattimax.errors import CapacityError, DomainError
from lattimax.instances import load_fixture
from lattimax.lattice import (
    FunctionOracle,
    LatticePoint,
    Property,
    TableOracle,
    check_property,
    exhaustive_check,
    tabulate,
    tau,
)

KINDS = ("dr_submodular", "lattice_submodular", "monotone", "weak_dr", "coordinate_concave")


def sqrt_sum():
    return FunctionOracle(lambda x: sum(math.sqrt(v) for v in x), box=[3, 3])


def product():
    return FunctionOracle(lambda x: x[0] * x[1], box=[2, 2])


def saturated():
    return FunctionOracle(lambda x: min(x[0] + x[1], 3), box=[2, 2])


def convex_pair():
    return load_fixture("convex_pair")


# dr_submodular, lattice_submodular, monotone, weak_dr, coordinate_concave
EXPECTED = {
    sqrt_sum: (True, True, True, True, True),
    product: (False, False, True, False, True),
    saturated: (True, True, True, True, True),
    convex_pair: (False, True, True, True, False),
}


class TestExhaustiveCheck:
    @pytest.mark.parametrize("make", list(EXPECTED))
    @pytest.mark.parametrize("index, kind", list(enumerate(KINDS)))
    def test_classes(self, make, index, kind):
        assert exhaustive_check(make(), kind).passed == EXPECTED[make][index]

    def test_enum_and_string_agree(self):
        assert exhaustive_check(product(), Property.dr_submodular) == exhaustive_check(product(), "dr_submodular")

    def test_violation_is_a_witness(self):
        f = product()
        violation = exhaustive_check(f, "lattice_submodular").violations[0]
        assert (violation.x, violation.y) == (LatticePoint([1, 0]), LatticePoint([0, 1]))
        assert violation.lhs == 0.0
        assert violation.rhs == 1.0

    def test_one_evaluation_per_point(self):
        f = sqrt_sum()
        exhaustive_check(f, "dr_submodular")
        assert f.call_count == 16

    def test_too_large(self):
        f = FunctionOracle(lambda x: 0.0, box=[400, 400])
        with pytest.raises(CapacityError, match="too large for the exhaustive check"):
            exhaustive_check(f, "monotone")

    def test_unknown_property(self):
        with pytest.raises(DomainError, match="unknown property 'convex'"):
            exhaustive_check(product(), "convex")

    @settings(deadline=None, max_examples=50)
    @given(st.lists(st.integers(-3, 6), min_size=15, max_size=15))
    def test_dr_is_lattice_and_concave(self, entries):
        table = np.array([0] + entries).reshape(4, 4)
        f = TableOracle(table)
        dr = exhaustive_check(f, "dr_submodular").passed
        lattice = exhaustive_check(f, "lattice_submodular").passed
        concave = exhaustive_check(f, "coordinate_concave").passed
        assert dr == (lattice and concave)


class TestCheckProperty:
    def test_same_seed_same_report(self):
        first = check_property(product(), "dr_submodular", trials=100, seed=3)
        second = check_property(product(), "dr_submodular", trials=100, seed=3)
        assert first == second

    @pytest.mark.parametrize("kind", KINDS)
    def test_no_false_alarm(self, kind):
        assert check_property(sqrt_sum(), kind, trials=300, seed=0).passed

    def test_finds_violation(self):
        report = check_property(product(), "lattice_submodular", trials=300, seed=0)
        assert not report.passed
        for v in report.violations:
            assert v.lhs < v.rhs

    @pytest.mark.parametrize("trials", [0, -1, 1.5, True])
    def test_bad_trials(self, trials):
        with pytest.raises(DomainError, match="trials should be a positive integer"):
            check_property(product(), "monotone", trials=trials, seed=0)

    def test_vacuous(self):
        f = FunctionOracle(lambda x: 0.0, box=[1])
        report = check_property(f, "coordinate_concave", trials=10, seed=0)
        assert report.passed
        assert f.call_count == 0


class TestTau:
    def test_example(self):
        assert tau(FunctionOracle(lambda x: min(x[0], 2) + 0.5 * x[1], box=[3, 1])) == 4.0

    def test_constant(self):
        assert tau(FunctionOracle(lambda x: 0.0, box=[2])) == math.inf

    def test_tabulate(self):
        values = tabulate(product())
        assert values.shape == (3, 3)
        assert values[2, 1] == 2.0

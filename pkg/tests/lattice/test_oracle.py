from concurrent.futures import ThreadPoolExecutor
import math

from hypothesis import given, settings, strategies as st
import pytest

from lattimax.errors import DomainError
from lattimax.lattice import ConditionedOracle, FunctionOracle, LatticePoint, TableOracle, marginal


def sqrt_sum(box):
    return FunctionOracle(lambda x: sum(math.sqrt(v) for v in x), box=box)


class TestFunctionOracle:
    def test_not_normalized(self):
        with pytest.raises(DomainError, match=r"f\(0\) = 1.0"):
            FunctionOracle(lambda x: 1.0, box=[1])

    def test_outside_box(self):
        f = sqrt_sum([1, 2])
        with pytest.raises(DomainError, match="entry 0 of LatticePoint.*exceeds the box"):
            f(LatticePoint([2, 0]))

    def test_wrong_dimension(self):
        with pytest.raises(DomainError, match="dimensions should be equal"):
            sqrt_sum([1, 2])(LatticePoint([1]))

    def test_wrong_type(self):
        with pytest.raises(DomainError, match="accepts LatticePoint only, but tuple was given"):
            sqrt_sum([1, 2]).eval((1, 0))

    def test_call_count(self):
        f = sqrt_sum([3])
        for k in range(4):
            f(LatticePoint([k]))
        assert f.call_count == 4

    def test_failed_call_is_not_counted(self):
        f = sqrt_sum([1])
        with pytest.raises(DomainError):
            f(LatticePoint([2]))
        assert f.call_count == 0

    def test_concurrent_counting(self):
        f = sqrt_sum([3, 3])
        points = [LatticePoint([k % 4, k // 4 % 4]) for k in range(1000)]
        with ThreadPoolExecutor(max_workers=8) as executor:
            values = list(executor.map(f.eval, points))
        assert f.call_count == 1000
        assert values[5] == f.eval(points[5])

    def test_repr(self):
        assert repr(sqrt_sum([1, 2])) == "FunctionOracle(box=(1, 2))"


class TestTableOracle:
    def test_box_from_shape(self):
        f = TableOracle([[0, 1, 2], [1, 2, 3]])
        assert f.box == LatticePoint([1, 2])
        assert f(LatticePoint([1, 2])) == 3.0

    def test_not_normalized(self):
        with pytest.raises(DomainError, match="table should be normalized"):
            TableOracle([[1, 2], [2, 3]])

    def test_not_finite(self):
        with pytest.raises(DomainError, match="finite values only"):
            TableOracle([0, float("inf")])

    def test_table_is_read_only(self):
        f = TableOracle([0, 1])
        with pytest.raises(ValueError):
            f.table[1] = 5


class TestConditionedOracle:
    def test_view(self):
        f = sqrt_sum([4, 4])
        y = LatticePoint([1, 2])
        g = ConditionedOracle(f, y)
        assert g.box == LatticePoint([3, 2])
        assert g.anchor == y
        assert g.base is f
        assert g(LatticePoint([3, 0])) == pytest.approx(f(LatticePoint([4, 2])) - f(y))

    def test_counts_through(self):
        f = sqrt_sum([4, 4])
        g = ConditionedOracle(f, LatticePoint([1, 1]), base_value=2.0)
        assert f.call_count == 0
        g(LatticePoint([1, 1]))
        assert (f.call_count, g.call_count) == (1, 1)

    def test_anchor_outside_box(self):
        with pytest.raises(DomainError, match="exceeds the box"):
            ConditionedOracle(sqrt_sum([1]), LatticePoint([2]))


class TestMarginal:
    def test_zero_delta_is_free(self):
        f = sqrt_sum([2, 2])
        assert marginal(f, LatticePoint([0, 0]), LatticePoint([1, 1])) == 0.0
        assert f.call_count == 0

    def test_default_anchor(self):
        f = sqrt_sum([4])
        assert marginal(f, LatticePoint([4])) == 2.0

    def test_outside_box(self):
        with pytest.raises(DomainError, match="exceeds the box"):
            marginal(sqrt_sum([2]), LatticePoint([2]), LatticePoint([1]))

    @settings(deadline=None)
    @given(
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
    )
    def test_chain_rule(self, a, b, y):
        f = sqrt_sum([9, 9, 9])
        a, b, y = LatticePoint(a), LatticePoint(b), LatticePoint(y)
        assert marginal(f, a + b, y) == pytest.approx(marginal(f, a, y) + marginal(f, b, y + a), abs=1e-9)

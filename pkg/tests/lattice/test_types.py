from hypothesis import given, strategies as st
import numpy as np
import pytest

from lattimax.errors import DomainError
from lattimax.lattice import (
    FractionalPoint,
    GroundSet,
    LatticePoint,
    box_points,
    box_size,
    join_meet,
    multiset_diff,
    scaled,
)


def point_pairs(max_n=5, max_value=20):
    def pair(n):
        entries = st.lists(st.integers(0, max_value), min_size=n, max_size=n)
        return st.tuples(entries, entries)

    return st.integers(1, max_n).flatmap(pair)


class TestLatticePoint:
    def test_negative_entry(self):
        with pytest.raises(DomainError, match="entry 1 of x is -1, but it should be non-negative"):
            LatticePoint([0, -1])

    def test_fractional_entry(self):
        with pytest.raises(DomainError, match="integers only"):
            LatticePoint([0.5, 1])

    def test_integral_floats(self):
        assert LatticePoint([1.0, 2.0]) == LatticePoint([1, 2])

    def test_empty(self):
        with pytest.raises(DomainError, match="at least one entry"):
            LatticePoint([])

    def test_read_only(self):
        x = LatticePoint([1, 2])
        with pytest.raises(ValueError):
            x.array[0] = 5
        assert x == LatticePoint([1, 2])

    def test_total_and_support(self):
        x = LatticePoint([0, 3, 0, 1])
        assert x.total() == 4
        assert x.support() == (1, 3)
        assert not x.is_zero()
        assert LatticePoint.zeros(4).is_zero()

    def test_unit(self):
        assert LatticePoint.unit(3, 2, 4) == LatticePoint([0, 0, 4])
        with pytest.raises(DomainError, match=r"element should be an index in \[0, 3\)"):
            LatticePoint.unit(3, 3)

    def test_add_units_below_zero(self):
        with pytest.raises(DomainError, match="entry 0 would become -1"):
            LatticePoint([0, 1]).add_units(0, -1)

    def test_subtraction_needs_order(self):
        assert LatticePoint([3, 1]) - LatticePoint([1, 1]) == LatticePoint([2, 0])
        with pytest.raises(DomainError, match="isn't below"):
            LatticePoint([1, 0]) - LatticePoint([0, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError, match="dimensions should be equal, but they are 2 and 3"):
            LatticePoint([1, 0]) + LatticePoint([1, 0, 0])

    def test_partial_order(self):
        x, y = LatticePoint([1, 0]), LatticePoint([0, 1])
        assert not x <= y
        assert not y <= x
        assert x <= LatticePoint([1, 1])
        assert LatticePoint([1, 1]) >= y

    def test_hashable(self):
        points = {LatticePoint([1, 2]), LatticePoint([1, 2]), LatticePoint([2, 1])}
        assert len(points) == 2

    def test_iteration(self):
        x = LatticePoint([2, 0, 5])
        assert list(x) == [2, 0, 5]
        assert x[2] == 5
        assert len(x) == 3
        assert x.to_tuple() == (2, 0, 5)
        assert x.dot([1, 2, 0.5]) == 4.5


class TestJoinMeet:
    @given(point_pairs())
    def test_modular_identity(self, pair):
        x, y = LatticePoint(pair[0]), LatticePoint(pair[1])
        join, meet = join_meet(x, y)
        assert join + meet == x + y
        assert meet <= x <= join
        assert meet <= y <= join

    @given(point_pairs())
    def test_multiset_diff(self, pair):
        x, y = LatticePoint(pair[0]), LatticePoint(pair[1])
        _, meet = join_meet(x, y)
        assert multiset_diff(x, y) + meet == x

    def test_example(self):
        assert join_meet(LatticePoint([1, 3]), LatticePoint([2, 0])) == (LatticePoint([2, 3]), LatticePoint([1, 0]))


class TestBox:
    @pytest.mark.parametrize("box", [[0], [2], [1, 2], [2, 0, 3]])
    def test_size(self, box):
        points = list(box_points(LatticePoint(box)))
        assert len(points) == box_size(LatticePoint(box))
        assert len(set(points)) == len(points)
        assert all(p <= LatticePoint(box) for p in points)

    def test_lexicographic_order(self):
        points = [p.to_tuple() for p in box_points(LatticePoint([1, 2]))]
        assert points == sorted(points)


class TestFractionalPoint:
    def test_snapping(self):
        x = FractionalPoint([0.1 + 0.2 + 0.7, 1.5])
        assert x[0] == 1.0
        assert x.fractional_support() == (1,)

    def test_floor_and_frac(self):
        x = FractionalPoint([1.25, 3.0, 0.5])
        assert x.floor() == LatticePoint([1, 3, 0])
        np.testing.assert_allclose(x.frac(), [0.25, 0.0, 0.5])
        assert x.total() == 4.75

    def test_to_lattice(self):
        assert FractionalPoint([2.0, 0.0]).to_lattice() == LatticePoint([2, 0])
        with pytest.raises(DomainError, match="isn't integral"):
            FractionalPoint([0.5]).to_lattice()

    def test_negative(self):
        with pytest.raises(DomainError, match="entry 0 of x is -0.5"):
            FractionalPoint([-0.5])

    def test_not_finite(self):
        with pytest.raises(DomainError, match="finite"):
            FractionalPoint([float("nan")])

    def test_mixed_addition(self):
        assert FractionalPoint([0.5, 0.5]) + LatticePoint([1, 0]) == FractionalPoint([1.5, 0.5])
        assert LatticePoint([1, 0]) + FractionalPoint([0.5, 0.5]) == FractionalPoint([1.5, 0.5])

    def test_from_lattice(self):
        assert FractionalPoint(LatticePoint([2, 1])).is_integral()

    def test_scaled(self):
        assert scaled(LatticePoint([1, 4]), 0.25) == FractionalPoint([0.25, 1.0])
        with pytest.raises(DomainError, match="scale should be non-negative"):
            scaled(LatticePoint([1]), -1)


def test_ground_set():
    assert list(GroundSet(3)) == [0, 1, 2]
    assert len(GroundSet(3)) == 3
    with pytest.raises(DomainError, match="at least one element"):
        GroundSet(0)

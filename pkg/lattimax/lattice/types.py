"""Vectors on the integer lattice and in the non-negative orthant.

Both vector types are immutable values backed by read-only numpy arrays.
Ground set elements are dense indices ``0..n-1``.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple, Union

import numpy as np

from lattimax._helpers.validate import _as_int_vector, _as_real_vector, _check_element, _check_same_dimension
from lattimax.errors import DomainError

SNAP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GroundSet:
    """Ground set ``E = {0, ..., n - 1}``"""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"ground set should have at least one element, but n is {self.n!r}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def __len__(self):
        return self.n


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class LatticePoint:
    """Non-negative integer vector, the solution type of every solver

    Points are partially ordered: ``x <= y`` holds iff it holds entrywise.

    Parameters
    ----------
    entries: Iterable[int]
        count of units per element, all entries should be non-negative

    Examples
    --------
    >>> x = LatticePoint([1, 0, 2])
    >>> x.total(), x.support()
    (3, (0, 2))
    >>> x + LatticePoint.unit(3, 1, 4)
    LatticePoint([1, 4, 2])
    >>> LatticePoint([0, 0, 1]) <= x
    True
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, entries: Iterable[int]):
        if isinstance(entries, LatticePoint):
            self._data = entries._data
        else:
            self._data = _frozen(_as_int_vector(list(entries) if not isinstance(entries, np.ndarray) else entries))
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "LatticePoint":
        # trusted constructor, arr is a fresh non-negative int64 vector
        point = cls.__new__(cls)
        point._data = _frozen(arr)
        point._hash = None
        return point

    @classmethod
    def zeros(cls, n: int) -> "LatticePoint":
        if n < 1:
            raise DomainError(f"dimension should be positive, but it is {n}")
        return cls._wrap(np.zeros(n, dtype=np.int64))

    @classmethod
    def unit(cls, n: int, e: int, k: int = 1) -> "LatticePoint":
        """``k`` times the unit vector of element ``e``"""
        _check_element(e, n)
        if k < 0:
            raise DomainError(f"multiplier of the unit vector should be non-negative, but it is {k}")
        arr = np.zeros(n, dtype=np.int64)
        arr[e] = k
        return cls._wrap(arr)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries"""
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    def total(self) -> int:
        """``x(E)``, the size of the multiset ``{x}``"""
        return int(self._data.sum())

    def support(self) -> Tuple[int, ...]:
        return tuple(int(e) for e in np.flatnonzero(self._data))

    def is_zero(self) -> bool:
        return not self._data.any()

    def add_units(self, e: int, k: int = 1) -> "LatticePoint":
        """``x + k * chi_e``, ``k`` may be negative as long as the result stays non-negative"""
        _check_element(e, self.n)
        arr = self._data.copy()
        arr[e] += k
        if arr[e] < 0:
            raise DomainError(f"entry {e} would become {arr[e]}, but it should be non-negative")
        return LatticePoint._wrap(arr)

    def dot(self, weights) -> float:
        return float(np.dot(self._data, weights))

    def to_tuple(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self._data)

    def __len__(self):
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_tuple())

    def __getitem__(self, e: int) -> int:
        return int(self._data[e])

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        if not isinstance(other, LatticePoint):
            return NotImplemented
        _check_same_dimension(self, other)
        return LatticePoint._wrap(self._data + other._data)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        if not isinstance(other, LatticePoint):
            return NotImplemented
        _check_same_dimension(self, other)
        arr = self._data - other._data
        if (arr < 0).any():
            raise DomainError(f"{other} isn't below {self}, use multiset_diff for the truncated difference")
        return LatticePoint._wrap(arr)

    def __le__(self, other: "LatticePoint") -> bool:
        _check_same_dimension(self, other)
        return bool(np.all(self._data <= _entries(other)))

    def __ge__(self, other: "LatticePoint") -> bool:
        _check_same_dimension(self, other)
        return bool(np.all(self._data >= _entries(other)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePoint):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._data.tobytes()))
        return self._hash

    def __repr__(self):
        return f"LatticePoint({self._data.tolist()})"


class FractionalPoint:
    """Non-negative real vector, the domain of the continuous extension

    Entries closer than ``1e-9`` to an integer are snapped to it, so points produced by
    floating-point accumulation keep integral coordinates exact.

    Examples
    --------
    >>> x = FractionalPoint([1.5, 2.0, 0.25])
    >>> x.floor()
    LatticePoint([1, 2, 0])
    >>> x.fractional_support()
    (0, 2)
    >>> FractionalPoint([0.1 + 0.2 + 0.7]).is_integral()
    True
    """

    __slots__ = ("_data",)

    def __init__(self, entries: Union[Iterable[float], LatticePoint]):
        if isinstance(entries, LatticePoint):
            arr = entries.array.astype(np.float64)
        else:
            raw = np.asarray(entries if isinstance(entries, np.ndarray) else list(entries), dtype=np.float64)
            arr = _as_real_vector(_snap(raw))
        self._data = _frozen(arr)

    @classmethod
    def zeros(cls, n: int) -> "FractionalPoint":
        return cls(np.zeros(n))

    @property
    def array(self) -> np.ndarray:
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    def floor(self) -> LatticePoint:
        """``⌊x⌋``, the lowest corner of the hypercube containing ``x``"""
        return LatticePoint._wrap(np.floor(self._data).astype(np.int64))

    def frac(self) -> np.ndarray:
        """``⟨x⟩ = x - ⌊x⌋``, entries in ``[0, 1)``"""
        return self._data - np.floor(self._data)

    def fractional_support(self) -> Tuple[int, ...]:
        return tuple(int(e) for e in np.flatnonzero(self.frac() > 0))

    def is_integral(self) -> bool:
        return not self.fractional_support()

    def to_lattice(self) -> LatticePoint:
        if not self.is_integral():
            raise DomainError(f"{self} isn't integral")
        return self.floor()

    def total(self) -> float:
        return float(self._data.sum())

    def __len__(self):
        return self.n

    def __getitem__(self, e: int) -> float:
        return float(self._data[e])

    def __iter__(self):
        return iter(self._data.tolist())

    def __add__(self, other) -> "FractionalPoint":
        if not isinstance(other, (FractionalPoint, LatticePoint)):
            return NotImplemented
        _check_same_dimension(self, other)
        return FractionalPoint(self._data + other.array)

    __radd__ = __add__

    def __le__(self, other) -> bool:
        _check_same_dimension(self, other)
        return bool(np.all(self._data <= _entries(other) + SNAP_TOLERANCE))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (FractionalPoint, LatticePoint)):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._data, other.array))

    def __hash__(self):
        return hash((self.n, self._data.tobytes()))

    def __repr__(self):
        return f"FractionalPoint({self._data.tolist()})"


def scaled(y: Union[LatticePoint, FractionalPoint], t: float) -> FractionalPoint:
    """``t * y`` as a fractional point

    >>> scaled(LatticePoint([1, 4]), 0.25)
    FractionalPoint([0.25, 1.0])
    """
    if t < 0:
        raise DomainError(f"scale should be non-negative, but it is {t}")
    return FractionalPoint(y.array * float(t))


def _entries(x) -> np.ndarray:
    return x.array if isinstance(x, (LatticePoint, FractionalPoint)) else np.asarray(x)


def _snap(arr: np.ndarray) -> np.ndarray:
    rounded = np.round(arr)
    close = np.abs(arr - rounded) <= SNAP_TOLERANCE
    return np.where(close, rounded, arr)

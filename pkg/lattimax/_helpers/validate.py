import numbers

import numpy as np

from lattimax.errors import DomainError


def _as_int_vector(values, name: str = "x") -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise DomainError(f"{name} should be one dimensional, but its shape is {arr.shape}")
    if arr.size == 0:
        raise DomainError(f"{name} should have at least one entry")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or not np.all(arr == np.round(arr)):
            raise DomainError(f"{name} should contain integers only, but it is {arr.tolist()}")
    elif arr.dtype.kind not in "iub":
        raise DomainError(f"{name} should contain integers only, but its type is {arr.dtype}")
    arr = arr.astype(np.int64)
    _check_non_negative(arr, name)
    return arr


def _as_real_vector(values, name: str = "x") -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError(f"{name} should be one dimensional, but its shape is {arr.shape}")
    if arr.size == 0:
        raise DomainError(f"{name} should have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} should contain finite numbers only, but it is {arr.tolist()}")
    _check_non_negative(arr, name)
    return arr


def _check_non_negative(arr: np.ndarray, name: str):
    negative = np.flatnonzero(arr < 0)
    if negative.size:
        e = int(negative[0])
        raise DomainError(f"entry {e} of {name} is {arr[e]}, but it should be non-negative")


def _check_same_dimension(x, y):
    if len(x) != len(y):
        raise DomainError(f"dimensions should be equal, but they are {len(x)} and {len(y)}")


def _check_element(e, n: int):
    if not isinstance(e, numbers.Integral) or not 0 <= e < n:
        raise DomainError(f"element should be an index in [0, {n}), but it is {e!r}")


def _check_non_negative_int(value, name: str):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise DomainError(f"{name} should be an integer, but it is {value!r}")
    if value < 0:
        raise DomainError(f"{name} should be non-negative, but it is {value}")


def _check_positive_int(value, name: str):
    _check_non_negative_int(value, name)
    if value == 0:
        raise DomainError(f"{name} should be positive, but it is 0")

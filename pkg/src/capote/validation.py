"""Input validation helpers shared by the numeric core and the estimators."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError


def as_float_vector(values, name: str = "values") -> np.ndarray:
    """Coerce to a finite 1-D float array."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DegenerateInputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DegenerateInputError(f"{name} contains non-finite entries")
    return arr


def as_float_matrix(X, n_columns: int | None = None, name: str = "X") -> np.ndarray:
    """Coerce to a finite 2-D float array, optionally with a fixed column count."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise DegenerateInputError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if n_columns is not None and arr.shape[1] != n_columns:
        raise DegenerateInputError(
            f"{name} must have {n_columns} columns, got {arr.shape[1]}"
        )
    if not np.all(np.isfinite(arr)):
        raise DegenerateInputError(f"{name} contains non-finite entries")
    return arr


def check_equal_length(a: np.ndarray, b: np.ndarray, name_a: str = "x", name_b: str = "y") -> None:
    if len(a) != len(b):
        raise DegenerateInputError(
            f"{name_a} and {name_b} must have equal length, got {len(a)} and {len(b)}"
        )


def check_positive(value, name: str) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be strictly positive, got {value!r}")


def check_unit_interval(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")

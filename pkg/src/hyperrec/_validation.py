"""Input validation helpers shared by the estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def check_feature_matrix(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {x.shape}")
    if x.shape[0] == 0:
        raise ValueError("feature matrix is empty")
    if not np.isfinite(x).all():
        raise ValueError("feature matrix contains non-finite values")
    return x


def check_binary_labels(y: Sequence[bool] | np.ndarray, n_rows: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (n_rows,):
        raise ValueError(f"labels must have shape ({n_rows},), got {y.shape}")
    if not set(np.unique(y)) <= {0.0, 1.0}:
        raise ValueError("labels must be binary")
    if y.min() == y.max():
        raise ValueError("training needs at least one example of each class")
    return y


def check_fraction(value: float, name: str = "fraction") -> float:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must be strictly between 0 and 1")
    return float(value)

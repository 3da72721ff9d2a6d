"""Small input-validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np

__all__ = ["NotFittedError", "check_matrix", "check_labels", "check_fitted"]


class NotFittedError(RuntimeError):
    """Raised when predict/transform is called before fit."""


def check_matrix(X, name: str = "X", n_cols: int | None = None) -> np.ndarray:
    """Coerce to a 2-d float array and reject non-finite entries."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={X.ndim}")
    if X.size and not np.isfinite(X).all():
        raise ValueError(f"{name} contains non-finite entries")
    if n_cols is not None and X.shape[1] != n_cols:
        raise ValueError(f"{name} has {X.shape[1]} columns, expected {n_cols}")
    return X


def check_labels(y, n_rows: int) -> np.ndarray:
    """Validate a binary label vector (1 = anomaly)."""
    y = np.asarray(y)
    if y.shape != (n_rows,):
        raise ValueError(f"labels must have shape ({n_rows},), got {y.shape}")
    vals = np.unique(y)
    if not np.isin(vals, (0, 1)).all():
        raise ValueError(f"labels must be binary 0/1, got values {vals}")
    return y.astype(int)


def check_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted; call fit() first"
        )

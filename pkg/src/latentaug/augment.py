"""Feature-space augmenters for latent training sets.

All augmenters return the original rows as a prefix of the output followed by
the synthetic rows, and are deterministic for a given seed. SMOTE/ADASYN
interpolate between nearest neighbors (Euclidean, ties broken by lowest row
index), so their synthetics stay inside the convex hull of the input.
"""

from __future__ import annotations

import numpy as np

from .autoencoder import HarvestedLatents
from .validation import check_matrix

__all__ = [
    "AUGMENT_METHODS",
    "smote",
    "adasyn",
    "gaussian_noise",
    "make_training_set",
]

AUGMENT_METHODS = ("none", "smote", "adasyn", "noise", "ae_epochs")


def _knn_indices(X: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k nearest neighbors of each row (self excluded)."""
    n = X.shape[0]
    if k >= n:
        raise ValueError(f"k_neighbors={k} must be < number of rows ({n})")
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.fill_diagonal(d2, np.inf)
    # stable argsort keeps the lowest-index neighbor on distance ties
    return np.argsort(d2, axis=1, kind="stable")[:, :k]


def _interpolate(X, seed_rows, neighbor_rows, rng):
    lam = rng.random(seed_rows.shape[0])[:, None]
    return X[seed_rows] + lam * (X[neighbor_rows] - X[seed_rows])


def smote(X, n_synthetic: int, k_neighbors: int = 5, seed: int = 0) -> np.ndarray:
    """Append n_synthetic rows, each drawn on the segment between a random
    row and one of its k nearest neighbors."""
    X = check_matrix(X, "latents")
    if n_synthetic < 0:
        raise ValueError("n_synthetic must be >= 0")
    nn = _knn_indices(X, k_neighbors)
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, X.shape[0], size=n_synthetic)
    picks = rng.integers(0, k_neighbors, size=n_synthetic)
    synthetic = _interpolate(X, seeds, nn[seeds, picks], rng)
    return np.vstack([X, synthetic])


def adasyn_allocation(X, n_synthetic: int, k_neighbors: int) -> np.ndarray:
    """Per-row synthetic budget proportional to mean k-NN distance.

    This is the single-class reading of adaptive synthetic sampling: with no
    majority class to count, "difficulty" is local sparsity. Rounding is by
    largest remainder so the allocation sums exactly to n_synthetic.
    """
    nn = _knn_indices(X, k_neighbors)
    diffs = X[:, None, :] - X[nn]
    r = np.sqrt(np.sum(diffs * diffs, axis=2)).mean(axis=1)
    total = r.sum()
    if total == 0:  # all rows identical: spread the budget uniformly
        weights = np.full(X.shape[0], 1.0 / X.shape[0])
    else:
        weights = r / total
    raw = weights * n_synthetic
    alloc = np.floor(raw).astype(int)
    short = n_synthetic - int(alloc.sum())
    if short > 0:
        remainder = raw - alloc
        top = np.argsort(-remainder, kind="stable")[:short]
        alloc[top] += 1
    return alloc


def adasyn(X, n_synthetic: int, k_neighbors: int = 5, seed: int = 0) -> np.ndarray:
    """SMOTE-style interpolation with the budget skewed toward sparse rows."""
    X = check_matrix(X, "latents")
    if n_synthetic < 0:
        raise ValueError("n_synthetic must be >= 0")
    nn = _knn_indices(X, k_neighbors)
    alloc = adasyn_allocation(X, n_synthetic, k_neighbors)
    rng = np.random.default_rng(seed)
    seeds = np.repeat(np.arange(X.shape[0]), alloc)
    picks = rng.integers(0, k_neighbors, size=seeds.shape[0])
    synthetic = _interpolate(X, seeds, nn[seeds, picks], rng)
    return np.vstack([X, synthetic])


def gaussian_noise(X, n_synthetic: int, sigma: float = 0.05, seed: int = 0) -> np.ndarray:
    """Append noisy copies x + N(0, sigma^2 I), cycling through the rows."""
    X = check_matrix(X, "latents")
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    if n_synthetic < 0:
        raise ValueError("n_synthetic must be >= 0")
    rng = np.random.default_rng(seed)
    base = np.arange(n_synthetic) % X.shape[0]
    noisy = X[base] + rng.normal(0.0, sigma, size=(n_synthetic, X.shape[1]))
    return np.vstack([X, noisy])


def make_training_set(
    method: str,
    final_latents: np.ndarray,
    harvest: HarvestedLatents | None = None,
    k_neighbors: int = 5,
    noise_sigma: float = 0.05,
    seed: int = 0,
    target_rows: int | None = None,
) -> np.ndarray:
    """Build the detector training set for one augmentation arm.

    "none" passes the final-epoch latents through; "ae_epochs" uses the
    harvested multi-epoch latents; the other methods oversample the
    final-epoch latents up to target_rows (defaulting to the harvest size so
    all augmented arms are size-matched).
    """
    if method not in AUGMENT_METHODS:
        raise ValueError(f"unknown augmentation method {method!r}")
    final_latents = check_matrix(final_latents, "final_latents")
    if method == "none":
        return final_latents
    if method == "ae_epochs":
        if harvest is None:
            raise ValueError("ae_epochs requires the harvested latent set")
        return harvest.matrix

    if target_rows is None:
        if harvest is None:
            raise ValueError(
                f"{method} needs target_rows or a harvest to size against"
            )
        target_rows = harvest.matrix.shape[0]
    n_synthetic = target_rows - final_latents.shape[0]
    if n_synthetic < 0:
        raise ValueError("target_rows is smaller than the input row count")
    if method == "smote":
        return smote(final_latents, n_synthetic, k_neighbors, seed)
    if method == "adasyn":
        return adasyn(final_latents, n_synthetic, k_neighbors, seed)
    return gaussian_noise(final_latents, n_synthetic, noise_sigma, seed)

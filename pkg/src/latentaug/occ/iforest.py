"""Isolation forest over axis-aligned random partition trees.

Each tree is grown on a subsample of psi rows with uniformly random split
feature and split value, truncated at depth ceil(log2 psi). A point's path
length in a truncated leaf of size s is extended by c(s) = 2*H(s-1) -
2*(s-1)/s (exact harmonic numbers), the expected unsuccessful-search depth of
a random BST. The anomaly score is 2^(-mean path length / c(psi)), in (0, 1].
"""

from __future__ import annotations

import math

import numpy as np

from .base import OneClassDetector

__all__ = ["IsolationForestDetector", "average_path_length"]


def average_path_length(size: int) -> float:
    """c(size): expected path length of an unsuccessful BST search."""
    if size <= 1:
        return 0.0
    harmonic = float(np.sum(1.0 / np.arange(1, size)))
    return 2.0 * harmonic - 2.0 * (size - 1) / size


class _Tree:
    """Flat-array isolation tree: feature < 0 marks a leaf."""

    __slots__ = ("feature", "threshold", "left", "right", "leaf_path")

    def __init__(self, X: np.ndarray, max_depth: int, rng: np.random.Generator):
        feature: list[int] = []
        threshold: list[float] = []
        left: list[int] = []
        right: list[int] = []
        leaf_path: list[float] = []

        def grow(idx: np.ndarray, depth: int) -> int:
            node = len(feature)
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            leaf_path.append(0.0)
            lo = X[idx].min(axis=0)
            hi = X[idx].max(axis=0)
            splittable = np.flatnonzero(hi > lo)
            if depth >= max_depth or idx.size <= 1 or splittable.size == 0:
                leaf_path[node] = depth + average_path_length(idx.size)
                return node
            f = int(rng.choice(splittable))
            s = float(rng.uniform(lo[f], hi[f]))
            mask = X[idx, f] < s
            feature[node] = f
            threshold[node] = s
            left[node] = grow(idx[mask], depth + 1)
            right[node] = grow(idx[~mask], depth + 1)
            return node

        grow(np.arange(X.shape[0]), 0)
        self.feature = np.asarray(feature, dtype=int)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=int)
        self.right = np.asarray(right, dtype=int)
        self.leaf_path = np.asarray(leaf_path, dtype=float)

    def path_lengths(self, X: np.ndarray) -> np.ndarray:
        node = np.zeros(X.shape[0], dtype=int)
        while True:
            internal = self.feature[node] >= 0
            if not internal.any():
                break
            idx = np.flatnonzero(internal)
            cur = node[idx]
            goes_left = X[idx, self.feature[cur]] < self.threshold[cur]
            node[idx] = np.where(goes_left, self.left[cur], self.right[cur])
        return self.leaf_path[node]


class IsolationForestDetector(OneClassDetector):
    def __init__(
        self,
        n_trees: int = 20,
        subsample_size: int = 256,
        contamination: float = 0.1,
        random_state: int = 0,
    ):
        self.n_trees = n_trees
        self.subsample_size = subsample_size
        self.contamination = contamination
        self.random_state = random_state

    def _fit(self, X: np.ndarray) -> None:
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.subsample_size < 2:
            raise ValueError("subsample_size must be >= 2")
        rng = np.random.default_rng(self.random_state)
        psi = min(self.subsample_size, X.shape[0])
        max_depth = max(1, math.ceil(math.log2(psi)))
        self.trees_ = [
            _Tree(X[rng.choice(X.shape[0], size=psi, replace=False)], max_depth, rng)
            for _ in range(self.n_trees)
        ]
        self.normalizer_ = average_path_length(psi)

    def _score(self, X: np.ndarray) -> np.ndarray:
        paths = np.mean([t.path_lengths(X) for t in self.trees_], axis=0)
        return np.power(2.0, -paths / self.normalizer_)

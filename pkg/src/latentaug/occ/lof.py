"""Local outlier factor with exact k-NN.

Standard definitions: the k-distance neighborhood includes every training
point at distance <= the k-th nearest-neighbor distance (so ties can push it
past k members); reachability distance is max(k-distance of the neighbor,
actual distance); local reachability density is the inverse mean reachability
over the neighborhood, floored at 1e-12 against exact-duplicate collapse.
Training rows are scored with themselves excluded from their neighborhood.
"""

from __future__ import annotations

import numpy as np

from .base import OneClassDetector

__all__ = ["LocalOutlierFactorDetector"]

_DENSITY_FLOOR = 1e-12
_CHUNK = 256


def _chunk_dists(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Euclidean distances between every row of A and every row of B."""
    diff = A[:, None, :] - B[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


class LocalOutlierFactorDetector(OneClassDetector):
    def __init__(self, n_neighbors: int = 20, contamination: float = 0.1):
        self.n_neighbors = n_neighbors
        self.contamination = contamination

    def _fit(self, X: np.ndarray) -> None:
        k = self.n_neighbors
        n = X.shape[0]
        if not 1 <= k < n:
            raise ValueError(
                f"n_neighbors={k} must be in [1, {n}) for {n} training rows"
            )
        self.X_ = X

        kdist = np.empty(n)
        neigh_idx: list[np.ndarray] = [None] * n
        neigh_dist: list[np.ndarray] = [None] * n
        for start in range(0, n, _CHUNK):
            rows = np.arange(start, min(start + _CHUNK, n))
            D = _chunk_dists(X[rows], X)
            D[np.arange(rows.size), rows] = np.inf
            kd = np.partition(D, k - 1, axis=1)[:, k - 1]
            kdist[rows] = kd
            for r, i in enumerate(rows):
                mask = D[r] <= kd[r]
                neigh_idx[i] = np.flatnonzero(mask)
                neigh_dist[i] = D[r][mask]

        lrd = np.empty(n)
        for i in range(n):
            reach = np.maximum(kdist[neigh_idx[i]], neigh_dist[i])
            lrd[i] = 1.0 / max(reach.mean(), _DENSITY_FLOOR)
        lof = np.array(
            [lrd[neigh_idx[i]].mean() / lrd[i] for i in range(n)]
        )

        self.kdist_ = kdist
        self.lrd_ = lrd
        self._fit_scores = lof

    def _self_scores(self, X: np.ndarray) -> np.ndarray:
        return self._fit_scores

    def _score(self, X: np.ndarray) -> np.ndarray:
        k = self.n_neighbors
        out = np.empty(X.shape[0])
        for start in range(0, X.shape[0], _CHUNK):
            rows = np.arange(start, min(start + _CHUNK, X.shape[0]))
            D = _chunk_dists(X[rows], self.X_)
            kd = np.partition(D, k - 1, axis=1)[:, k - 1]
            for r, i in enumerate(rows):
                mask = D[r] <= kd[r]
                reach = np.maximum(self.kdist_[mask], D[r][mask])
                lrd_q = 1.0 / max(reach.mean(), _DENSITY_FLOOR)
                out[i] = self.lrd_[mask].mean() / lrd_q
        return out

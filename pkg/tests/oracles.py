"""Independent reference implementations used only to cross-check the library.

These are deliberately written as plain quadratic/enumerative code, separate
from the package's implementations.
"""

from __future__ import annotations

import itertools

import numpy as np

DENSITY_FLOOR = 1e-12


def brute_lof_fit(X: np.ndarray, k: int):
    """Per-point k-distance, lrd and LOF with self excluded, by direct loops."""
    n = X.shape[0]
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            dist[i, j] = np.sqrt(np.sum((X[i] - X[j]) ** 2))

    kdist = np.zeros(n)
    neighborhoods = []
    for i in range(n):
        others = [j for j in range(n) if j != i]
        ds = sorted(dist[i, j] for j in others)
        kdist[i] = ds[k - 1]
        neighborhoods.append([j for j in others if dist[i, j] <= kdist[i]])

    lrd = np.zeros(n)
    for i in range(n):
        reach = [max(kdist[j], dist[i, j]) for j in neighborhoods[i]]
        lrd[i] = 1.0 / max(sum(reach) / len(reach), DENSITY_FLOOR)

    lof = np.zeros(n)
    for i in range(n):
        lof[i] = sum(lrd[j] for j in neighborhoods[i]) / len(neighborhoods[i]) / lrd[i]
    return kdist, lrd, lof


def brute_lof_query(X: np.ndarray, queries: np.ndarray, k: int) -> np.ndarray:
    """LOF of query points against a fitted training set."""
    kdist, lrd, _ = brute_lof_fit(X, k)
    n = X.shape[0]
    out = np.zeros(queries.shape[0])
    for qi, q in enumerate(queries):
        d = [np.sqrt(np.sum((q - X[j]) ** 2)) for j in range(n)]
        kd = sorted(d)[k - 1]
        neigh = [j for j in range(n) if d[j] <= kd]
        reach = [max(kdist[j], d[j]) for j in neigh]
        lrd_q = 1.0 / max(sum(reach) / len(reach), DENSITY_FLOOR)
        out[qi] = sum(lrd[j] for j in neigh) / len(neigh) / lrd_q
    return out


def pairwise_roc_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Brute-force Mann-Whitney over all positive/negative pairs."""
    pos = scores[labels == 1]
    neg = scores[labels == 0]
    wins = int(np.sum(pos[:, None] > neg[None, :]))
    ties = int(np.sum(pos[:, None] == neg[None, :]))
    return (wins + 0.5 * ties) / (pos.size * neg.size)


def threshold_pr_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """PR AUC by re-counting tp/fp from scratch at every distinct threshold."""
    n_pos = int(np.sum(labels == 1))
    thresholds = sorted(set(scores), reverse=True)
    area = 0.0
    prev_recall = 0.0
    for t in thresholds:
        flagged = scores >= t
        tp = int(np.sum(flagged & (labels == 1)))
        fp = int(np.sum(flagged & (labels == 0)))
        recall = tp / n_pos
        precision = tp / (tp + fp)
        area += (recall - prev_recall) * precision
        prev_recall = recall
    return area


def enumerate_wilcoxon(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Exact two-sided Wilcoxon p by enumerating every sign assignment."""
    d = np.asarray(a, float) - np.asarray(b, float)
    d = d[d != 0]
    n = d.size
    abs_d = np.abs(d)

    # average ranks by direct position counting
    order = sorted(range(n), key=lambda i: abs_d[i])
    ranks = np.zeros(n)
    i = 0
    while i < n:
        j = i
        while j < n and abs_d[order[j]] == abs_d[order[i]]:
            j += 1
        for idx in order[i:j]:
            ranks[idx] = (i + 1 + j) / 2.0
        i = j

    w_plus = float(ranks[d > 0].sum())
    total = n * (n + 1) / 2.0
    w_obs = min(w_plus, total - w_plus)

    hits = 0
    for signs in itertools.product((1, -1), repeat=n):
        wp = sum(r for s, r in zip(signs, ranks) if s > 0)
        if min(wp, total - wp) <= w_obs + 1e-12:
            hits += 1
    return w_obs, hits / 2.0**n

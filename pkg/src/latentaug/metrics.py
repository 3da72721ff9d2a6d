"""Threshold-free evaluation and the supporting nonparametric statistics.

Scores follow the detector convention (higher = more anomalous) and labels
are binary with 1 = anomaly, the positive class. Quantiles use linear
interpolation between closest ranks throughout so thresholds and boxplot
statistics agree with numpy's default rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "roc_auc",
    "pr_auc",
    "trimmed_mean",
    "BoxplotStats",
    "boxplot_stats",
    "wilcoxon_signed_rank",
]


def _check_scored(scores, labels):
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-d arrays of equal length")
    n_pos = int((labels == 1).sum())
    n_neg = int((labels == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC requires at least one positive and one negative")
    return scores, labels, n_pos, n_neg


def roc_auc(scores, labels) -> float:
    """Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 * P(tie).

    Win and tie counts are accumulated as integers over tie groups, so the
    result is exact (matches a brute-force all-pairs count bit for bit).
    """
    scores, labels, n_pos, n_neg = _check_scored(scores, labels)
    order = np.argsort(scores, kind="stable")
    s = scores[order]
    y = labels[order]
    wins = 0  # positive strictly above negative
    ties = 0
    neg_below = 0
    i = 0
    n = s.size
    while i < n:
        j = i
        while j < n and s[j] == s[i]:
            j += 1
        pos_g = int((y[i:j] == 1).sum())
        neg_g = (j - i) - pos_g
        wins += pos_g * neg_below
        ties += pos_g * neg_g
        neg_below += neg_g
        i = j
    return (wins + 0.5 * ties) / (n_pos * n_neg)


def pr_auc(scores, labels) -> float:
    """Area under the precision-recall curve by a descending-score sweep.

    Equal scores are processed as one threshold block and the area uses
    step-wise (right-continuous) interpolation: sum of (R_i - R_{i-1}) * P_i.
    """
    scores, labels, n_pos, _ = _check_scored(scores, labels)
    order = np.argsort(-scores, kind="stable")
    s = scores[order]
    y = labels[order]
    area = 0.0
    tp = 0
    fp = 0
    prev_recall = 0.0
    i = 0
    n = s.size
    while i < n:
        j = i
        while j < n and s[j] == s[i]:
            j += 1
        block_pos = int((y[i:j] == 1).sum())
        tp += block_pos
        fp += (j - i) - block_pos
        recall = tp / n_pos
        precision = tp / (tp + fp)
        area += (recall - prev_recall) * precision
        prev_recall = recall
        i = j
    return area


def trimmed_mean(values, trim_each_end: int = 1) -> float:
    """Mean after dropping the trim_each_end largest and smallest values."""
    values = np.sort(np.asarray(values, dtype=float))
    if trim_each_end < 0:
        raise ValueError("trim_each_end must be >= 0")
    if values.size <= 2 * trim_each_end:
        raise ValueError(
            f"need more than {2 * trim_each_end} values, got {values.size}"
        )
    if trim_each_end == 0:
        return float(values.mean())
    return float(values[trim_each_end:-trim_each_end].mean())


@dataclass(frozen=True)
class BoxplotStats:
    q1: float
    median: float
    q3: float
    lower_whisker: float
    upper_whisker: float
    outliers: list[float]

    def to_dict(self) -> dict:
        return {
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "lower_whisker": self.lower_whisker,
            "upper_whisker": self.upper_whisker,
            "outliers": list(self.outliers),
        }


def boxplot_stats(values) -> BoxplotStats:
    """Tukey boxplot: whiskers at the most extreme points within 1.5 IQR."""
    values = np.asarray(values, dtype=float)
    if values.size < 4:
        raise ValueError("need at least 4 values for boxplot statistics")
    q1, med, q3 = np.quantile(values, [0.25, 0.5, 0.75])
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = values[(values >= lo_fence) & (values <= hi_fence)]
    outliers = values[(values < lo_fence) | (values > hi_fence)]
    return BoxplotStats(
        q1=float(q1),
        median=float(med),
        q3=float(q3),
        lower_whisker=float(inside.min()),
        upper_whisker=float(inside.max()),
        outliers=sorted(float(v) for v in outliers),
    )


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks starting at 1, ties receiving the average of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size)
    i = 0
    while i < values.size:
        j = i
        while j < values.size and values[order[j]] == values[order[i]]:
            j += 1
        ranks[order[i:j]] = 0.5 * (i + j + 1)  # mean of ranks i+1 .. j
        i = j
    return ranks


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def wilcoxon_signed_rank(a, b, exact_cutoff: int = 20) -> tuple[float, float]:
    """Two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped; tied absolute differences get average
    ranks; the statistic is W = min(W+, W-). For n <= exact_cutoff the
    p-value is P(min(W+, W-) <= W) under the exact sign-flip null (computed
    by a subset-sum convolution over the observed ranks); otherwise a normal
    approximation with continuity and tie corrections is used.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("paired samples must be 1-d arrays of equal length")
    d = a - b
    d = d[d != 0]
    n = d.size
    if n == 0:
        raise ValueError("all paired differences are zero")
    if n < 5:
        raise ValueError(f"need at least 5 nonzero differences, got {n}")

    abs_d = np.abs(d)
    ranks = _average_ranks(abs_d)
    w_plus = float(ranks[d > 0].sum())
    total = n * (n + 1) / 2.0
    w_minus = total - w_plus
    w = min(w_plus, w_minus)

    if n <= exact_cutoff:
        # ranks are multiples of 0.5; doubling makes them integers
        ranks2 = np.rint(2.0 * ranks).astype(int)
        total2 = int(ranks2.sum())
        counts = np.zeros(total2 + 1)
        counts[0] = 1.0
        for r in ranks2:
            counts[r:] += counts[: total2 + 1 - r].copy()
        w2 = int(round(2.0 * w))
        lower = counts[: w2 + 1].sum()
        upper = counts[total2 - w2 :].sum()
        if w2 >= total2 - w2:  # tails overlap: everything is counted
            p = 1.0
        else:
            p = (lower + upper) / 2.0**n
    else:
        mean = total / 2.0
        var = n * (n + 1) * (2 * n + 1) / 24.0
        _, tie_counts = np.unique(abs_d, return_counts=True)
        var -= float(np.sum(tie_counts**3 - tie_counts)) / 48.0
        z = (w - mean + 0.5) / math.sqrt(var)
        p = min(1.0, 2.0 * _normal_cdf(z))
    return w, p

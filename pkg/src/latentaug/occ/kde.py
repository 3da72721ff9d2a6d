"""Gaussian kernel density estimate used as a one-class scorer.

density(x) = (1/n) sum_i (2 pi h^2)^(-d/2) exp(-||x - x_i||^2 / (2 h^2))

The anomaly score is the negative log density, so sparser regions score
higher. Default bandwidth is Scott's rule h = n^(-1/(d+4)) * sigma_hat with
sigma_hat the mean per-dimension sample standard deviation.
"""

from __future__ import annotations

import math

import numpy as np

from .base import OneClassDetector

__all__ = ["KernelDensityDetector", "gaussian_log_density"]

_BANDWIDTH_FLOOR = 1e-12


def _logsumexp(a: np.ndarray, axis: int) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    return (m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))).squeeze(axis)


def gaussian_log_density(train: np.ndarray, X: np.ndarray, h: float) -> np.ndarray:
    """Log of the isotropic Gaussian mixture density over the training rows."""
    n, d = train.shape
    out = np.empty(X.shape[0])
    chunk = max(1, 2**22 // max(n, 1))
    for start in range(0, X.shape[0], chunk):
        q = X[start : start + chunk]
        diff = q[:, None, :] - train[None, :, :]
        sq = np.sum(diff * diff, axis=2)
        out[start : start + chunk] = (
            _logsumexp(-sq / (2.0 * h * h), axis=1)
            - math.log(n)
            - 0.5 * d * math.log(2.0 * math.pi * h * h)
        )
    return out


class KernelDensityDetector(OneClassDetector):
    def __init__(self, bandwidth="scott", contamination: float = 0.1):
        self.bandwidth = bandwidth
        self.contamination = contamination

    def _fit(self, X: np.ndarray) -> None:
        n, d = X.shape
        if self.bandwidth == "scott":
            sigma = float(np.mean(np.std(X, axis=0, ddof=1)))
            h = n ** (-1.0 / (d + 4)) * sigma
        else:
            h = float(self.bandwidth)
            if h <= 0:
                raise ValueError("fixed bandwidth must be > 0")
        self.X_ = X
        self.bandwidth_ = max(h, _BANDWIDTH_FLOOR)

    def _score(self, X: np.ndarray) -> np.ndarray:
        return -gaussian_log_density(self.X_, X, self.bandwidth_)

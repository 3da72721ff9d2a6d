"""Shared fit/score/predict scaffolding for the one-class detectors.

Scores follow one convention everywhere: higher means more anomalous. The
decision threshold is the (1 - contamination) quantile (linear interpolation)
of the training rows' own scores; predict flags a point iff its score is
strictly above the threshold.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from ..validation import check_fitted, check_matrix

__all__ = ["OneClassDetector"]


class OneClassDetector(BaseEstimator):
    """Base class; subclasses implement _fit, _score and _self_scores."""

    contamination: float

    def _check_contamination(self):
        if not 0.0 < self.contamination <= 0.5:
            raise ValueError("contamination must be in (0, 0.5]")

    def fit(self, X, y=None):
        self._check_contamination()
        X = check_matrix(X, "X")
        if X.shape[0] < 2:
            raise ValueError("need at least 2 training rows")
        self._fit(X)
        self.n_features_in_ = X.shape[1]
        self.training_scores_ = self._self_scores(X)
        self.threshold_ = float(
            np.quantile(self.training_scores_, 1.0 - self.contamination)
        )
        return self

    def score_samples(self, X) -> np.ndarray:
        """Anomaly scores, higher = more anomalous."""
        check_fitted(self, "threshold_")
        X = check_matrix(X, "X", self.n_features_in_)
        return self._score(X)

    def predict(self, X) -> np.ndarray:
        """1 for anomaly, 0 for normal."""
        return (self.score_samples(X) > self.threshold_).astype(int)

    # subclass hooks -------------------------------------------------
    def _fit(self, X: np.ndarray) -> None:
        raise NotImplementedError

    def _score(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _self_scores(self, X: np.ndarray) -> np.ndarray:
        """Scores of the training rows; default reuses the query path."""
        return self._score(X)

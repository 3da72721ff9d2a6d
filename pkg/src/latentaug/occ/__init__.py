"""One-class detectors with a shared fit/score_samples/predict surface."""

from .base import OneClassDetector
from .iforest import IsolationForestDetector, average_path_length
from .kde import KernelDensityDetector, gaussian_log_density
from .lof import LocalOutlierFactorDetector

__all__ = [
    "OneClassDetector",
    "LocalOutlierFactorDetector",
    "KernelDensityDetector",
    "IsolationForestDetector",
    "average_path_length",
    "gaussian_log_density",
    "make_detector",
]

DETECTORS = ("lof", "kde", "isf")


def make_detector(
    kind: str,
    lof_k: int = 20,
    contamination: float = 0.1,
    isf_trees: int = 20,
    isf_subsample: int = 256,
    kde_bandwidth="scott",
    seed: int = 0,
) -> OneClassDetector:
    """Construct a detector by name with the standard parameter set."""
    if kind == "lof":
        return LocalOutlierFactorDetector(
            n_neighbors=lof_k, contamination=contamination
        )
    if kind == "kde":
        return KernelDensityDetector(
            bandwidth=kde_bandwidth, contamination=contamination
        )
    if kind == "isf":
        return IsolationForestDetector(
            n_trees=isf_trees,
            subsample_size=isf_subsample,
            contamination=contamination,
            random_state=seed,
        )
    raise ValueError(f"unknown detector {kind!r}")

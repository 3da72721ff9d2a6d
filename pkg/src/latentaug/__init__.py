"""Latent-space training-set augmentation for one-class anomaly detection.

Train an undercomplete autoencoder on normal data, harvest the bottleneck
latents from the trailing fraction of epochs into an enlarged training set,
fit one-class detectors (LOF, KDE, isolation forest) on it, and evaluate
against SMOTE/ADASYN/Gaussian-noise/no-augmentation baselines with PR-AUC
and ROC-AUC.
"""

from .autoencoder import Autoencoder, HarvestedLatents
from .augment import adasyn, gaussian_noise, make_training_set, smote
from .data import (
    NormParams,
    NumericDataset,
    RawDataset,
    SplitSpec,
    apply_minmax,
    fit_minmax,
    load_csv,
    one_hot_encode,
    split_dataset,
    synth_shifted_gaussian,
)
from .experiment import ExperimentConfig, ExperimentReport, run_experiment
from .metrics import (
    boxplot_stats,
    pr_auc,
    roc_auc,
    trimmed_mean,
    wilcoxon_signed_rank,
)
from .occ import (
    IsolationForestDetector,
    KernelDensityDetector,
    LocalOutlierFactorDetector,
    make_detector,
)

__version__ = "0.1.0"

__all__ = [
    "Autoencoder",
    "HarvestedLatents",
    "smote",
    "adasyn",
    "gaussian_noise",
    "make_training_set",
    "RawDataset",
    "NumericDataset",
    "NormParams",
    "SplitSpec",
    "load_csv",
    "one_hot_encode",
    "fit_minmax",
    "apply_minmax",
    "split_dataset",
    "synth_shifted_gaussian",
    "LocalOutlierFactorDetector",
    "KernelDensityDetector",
    "IsolationForestDetector",
    "make_detector",
    "roc_auc",
    "pr_auc",
    "trimmed_mean",
    "boxplot_stats",
    "wilcoxon_signed_rank",
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
]

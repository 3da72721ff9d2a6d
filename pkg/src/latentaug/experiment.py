"""Config-driven experiment harness.

One run: split the data (train/val on normals only), normalize on the
training split, train the autoencoder while harvesting late-epoch latents,
build one detector training set per augmentation arm, fit every detector on
every arm, and score the test latents produced by the final model. The whole
protocol is repeated with derived seeds and aggregated by trimmed means.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from . import augment, data, metrics
from .autoencoder import Autoencoder
from .occ import DETECTORS, LocalOutlierFactorDetector, make_detector

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "run_single_arm",
    "write_report",
    "render_report",
]


@dataclass
class ExperimentConfig:
    seed: int = 0
    repetitions: int = 10
    trim_each_end: int = 1
    output_dir: str = "out"
    dataset: dict = field(default_factory=dict)
    split: dict = field(default_factory=dict)
    train: dict = field(default_factory=dict)
    augment: dict = field(default_factory=dict)
    occ: dict = field(default_factory=dict)
    methods: list[str] = field(
        default_factory=lambda: list(augment.AUGMENT_METHODS)
    )
    detectors: list[str] = field(default_factory=lambda: list(DETECTORS))

    def __post_init__(self):
        if self.trim_each_end > 0 and self.repetitions <= 2 * self.trim_each_end:
            raise ValueError(
                "repetitions must exceed twice trim_each_end for trimming"
            )
        for m in self.methods:
            if m not in augment.AUGMENT_METHODS:
                raise ValueError(f"unknown augmentation method {m!r}")
        for d in self.detectors:
            if d not in DETECTORS:
                raise ValueError(f"unknown detector {d!r}")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        return cls(**doc)


@dataclass
class ExperimentReport:
    config: dict
    seeds: list[int]
    records: list[dict]  # per (repetition, augmenter, detector)
    aggregates: list[dict]  # trimmed means per (augmenter, detector)
    lof_boxplots: dict  # augmenter -> per-repetition boxplot stats
    loss_histories: list[list]  # per repetition: [epoch, train, val]
    # (repetition, augmenter, detector) -> rows of (score, predicted, true);
    # written as CSV by write_report, deliberately kept out of report.json
    score_tables: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "seeds": self.seeds,
            "records": self.records,
            "aggregates": self.aggregates,
            "lof_boxplots": self.lof_boxplots,
        }
        return json.dumps(doc, sort_keys=True, indent=2)


def _load_dataset(cfg: ExperimentConfig) -> data.NumericDataset:
    spec = cfg.dataset
    if "synthetic" in spec:
        s = spec["synthetic"]
        return data.synth_shifted_gaussian(
            n_normal=s["n_normal"],
            n_anomaly=s["n_anomaly"],
            dim=s["dim"],
            shift=s.get("shift", 3.0),
            seed=s.get("seed", cfg.seed),
        )
    if "csv" in spec:
        raw = data.load_csv(
            spec["csv"],
            kinds=spec["kinds"],
            has_header=spec.get("has_header", True),
            name=spec.get("name"),
        )
        return data.one_hot_encode(raw)
    raise ValueError("dataset config needs a 'csv' or 'synthetic' entry")


def run_single_arm(
    latents_train: np.ndarray,
    latents_test: np.ndarray,
    labels_test: np.ndarray,
    detector_kind: str,
    occ_cfg: dict,
    seed: int,
):
    """Fit one detector on one training set; return (pr, roc, test scores)."""
    det = make_detector(detector_kind, seed=seed, **occ_cfg)
    det.fit(latents_train)
    scores = det.score_samples(latents_test)
    preds = (scores > det.threshold_).astype(int)
    return (
        metrics.pr_auc(scores, labels_test),
        metrics.roc_auc(scores, labels_test),
        scores,
        preds,
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    ds = _load_dataset(cfg)
    if ds.labels is None:
        raise ValueError("experiment dataset must carry labels")
    subsample_fraction = cfg.dataset.get("subsample_fraction")

    records: list[dict] = []
    seeds: list[int] = []
    lof_scores: dict[str, list[np.ndarray]] = {m: [] for m in cfg.methods}
    loss_histories: list[list] = []
    score_tables: dict = {}

    for rep in range(cfg.repetitions):
        seed_r = cfg.seed + rep
        seeds.append(seed_r)
        try:
            rep_records, rep_lof, history, rep_tables = _run_repetition(
                cfg, ds, subsample_fraction, rep, seed_r
            )
        except Exception as exc:
            raise RuntimeError(f"repetition {rep} failed: {exc}") from exc
        records.extend(rep_records)
        for m, s in rep_lof.items():
            lof_scores[m].append(s)
        loss_histories.append(history)
        score_tables.update(rep_tables)

    aggregates = []
    for method in cfg.methods:
        for det in cfg.detectors:
            prs = [
                r["pr_auc"]
                for r in records
                if r["augmenter"] == method and r["detector"] == det
            ]
            rocs = [
                r["roc_auc"]
                for r in records
                if r["augmenter"] == method and r["detector"] == det
            ]
            aggregates.append(
                {
                    "augmenter": method,
                    "detector": det,
                    "pr_auc_trimmed": metrics.trimmed_mean(prs, cfg.trim_each_end),
                    "roc_auc_trimmed": metrics.trimmed_mean(rocs, cfg.trim_each_end),
                }
            )

    lof_boxplots = {
        m: [metrics.boxplot_stats(s).to_dict() for s in per_rep]
        for m, per_rep in lof_scores.items()
        if per_rep
    }
    return ExperimentReport(
        config=asdict(cfg),
        seeds=seeds,
        records=records,
        aggregates=aggregates,
        lof_boxplots=lof_boxplots,
        loss_histories=loss_histories,
        score_tables=score_tables,
    )


def _run_repetition(cfg, ds, subsample_fraction, rep, seed_r):
    split_cfg = dict(cfg.split)
    spec = data.SplitSpec(
        train_fraction=split_cfg.get("train", 0.6),
        val_fraction=split_cfg.get("val", 0.2),
        test_fraction=split_cfg.get("test", 0.2),
        seed=seed_r,
    )
    train, val, test = data.split_dataset(ds, spec)
    if subsample_fraction:
        train = data.subsample(train, subsample_fraction, seed_r)

    params = data.fit_minmax(train)
    train_n = data.apply_minmax(train, params)
    val_n = data.apply_minmax(val, params)
    test_n = data.apply_minmax(test, params)

    ae = Autoencoder(random_state=seed_r, **cfg.train)
    ae.fit(train_n.matrix, X_val=val_n.matrix)
    history = [
        [e, tl, vl] for e, (tl, vl) in enumerate(ae.loss_history_)
    ]

    latents_final = ae.transform(train_n.matrix)
    latents_test = ae.transform(test_n.matrix)

    records = []
    rep_lof_scores = {}
    rep_tables = {}
    for method in cfg.methods:
        train_set = augment.make_training_set(
            method,
            latents_final,
            harvest=ae.harvest_,
            seed=seed_r,
            **cfg.augment,
        )
        for det_kind in cfg.detectors:
            try:
                pr, roc, scores, preds = run_single_arm(
                    train_set,
                    latents_test,
                    test_n.labels,
                    det_kind,
                    cfg.occ,
                    seed_r,
                )
            except Exception as exc:
                raise RuntimeError(
                    f"augmenter={method} detector={det_kind}: {exc}"
                ) from exc
            records.append(
                {
                    "repetition": rep,
                    "augmenter": method,
                    "detector": det_kind,
                    "pr_auc": pr,
                    "roc_auc": roc,
                }
            )
            rep_tables[(rep, method, det_kind)] = np.column_stack(
                [scores, preds, test_n.labels]
            )
            if det_kind == "lof":
                rep_lof_scores[method] = scores
    return records, rep_lof_scores, history, rep_tables


def write_report(report: ExperimentReport, output_dir) -> str:
    """Write report.json, boxplot.json and per-repetition loss CSVs."""
    os.makedirs(output_dir, exist_ok=True)
    report_path = os.path.join(output_dir, "report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    with open(os.path.join(output_dir, "boxplot.json"), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(report.lof_boxplots, sort_keys=True, indent=2))
    for rep, history in enumerate(report.loss_histories):
        path = os.path.join(output_dir, f"loss_history_rep{rep}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "train_loss", "val_loss"])
            writer.writerows(history)
    scores_dir = os.path.join(output_dir, "scores")
    os.makedirs(scores_dir, exist_ok=True)
    for (rep, method, det), table in report.score_tables.items():
        path = os.path.join(scores_dir, f"{method}_{det}_rep{rep}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["row", "score", "predicted", "label"])
            for i, (score, pred, label) in enumerate(table):
                writer.writerow([i, score, int(pred), int(label)])
    return report_path


def render_report(report_doc: dict) -> str:
    """Plain-text grid of trimmed AUCs with the best value per column marked."""
    aggregates = report_doc["aggregates"]
    if not aggregates:
        return "(empty report)"
    best_pr = max(a["pr_auc_trimmed"] for a in aggregates)
    best_roc = max(a["roc_auc_trimmed"] for a in aggregates)
    lines = [f"{'augmenter':<12} {'detector':<10} {'PR-AUC':>10} {'ROC-AUC':>10}"]
    lines.append("-" * len(lines[0]))
    for a in aggregates:
        pr_mark = "*" if a["pr_auc_trimmed"] == best_pr else " "
        roc_mark = "*" if a["roc_auc_trimmed"] == best_roc else " "
        lines.append(
            f"{a['augmenter']:<12} {a['detector']:<10} "
            f"{a['pr_auc_trimmed']:>9.4f}{pr_mark} "
            f"{a['roc_auc_trimmed']:>9.4f}{roc_mark}"
        )
    return "\n".join(lines)

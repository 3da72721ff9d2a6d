"""Dataset ingestion, encoding, normalization, splitting and synthetic fixtures.

Conventions: labels are binary with 1 = anomaly; features are normalized to
[-1, 1] with parameters fit on the training split only (values outside the
training range are extrapolated linearly, never clipped).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RawDataset",
    "NumericDataset",
    "NormParams",
    "SplitSpec",
    "load_csv",
    "one_hot_encode",
    "fit_minmax",
    "apply_minmax",
    "split_dataset",
    "subsample",
    "synth_shifted_gaussian",
]

COLUMN_KINDS = ("numeric", "categorical", "label")


@dataclass(frozen=True)
class RawDataset:
    """Parsed but not yet encoded tabular data (every cell a string)."""

    rows: list[list[str]]
    column_kinds: list[str]
    name: str = "dataset"
    column_names: list[str] | None = None

    def __post_init__(self):
        for kind in self.column_kinds:
            if kind not in COLUMN_KINDS:
                raise ValueError(f"unknown column kind {kind!r}")
        if sum(k == "label" for k in self.column_kinds) > 1:
            raise ValueError("at most one column may be tagged 'label'")
        arity = len(self.column_kinds)
        for i, row in enumerate(self.rows):
            if len(row) != arity:
                raise ValueError(
                    f"row {i} has {len(row)} cells, expected {arity}"
                )

    @property
    def n_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class NumericDataset:
    """Row-major feature matrix with optional binary anomaly labels."""

    matrix: np.ndarray
    labels: np.ndarray | None = None
    feature_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        if m.size and not np.isfinite(m).all():
            raise ValueError("matrix contains non-finite entries")
        object.__setattr__(self, "matrix", m)
        if self.labels is not None:
            y = np.asarray(self.labels, dtype=int)
            if y.shape != (m.shape[0],):
                raise ValueError("labels length must match the row count")
            if y.size and not np.isin(np.unique(y), (0, 1)).all():
                raise ValueError("labels must be binary 0/1")
            object.__setattr__(self, "labels", y)
        if not self.feature_names:
            object.__setattr__(
                self, "feature_names", [f"f{j}" for j in range(m.shape[1])]
            )
        elif len(self.feature_names) != m.shape[1]:
            raise ValueError("feature_names length must match column count")

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_features(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class NormParams:
    """Per-column min/max, fit on the training split."""

    col_min: np.ndarray
    col_max: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.col_min, dtype=float)
        hi = np.asarray(self.col_max, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("col_min/col_max must be 1-d arrays of equal length")
        if np.any(lo > hi):
            raise ValueError("col_min exceeds col_max for some column")
        object.__setattr__(self, "col_min", lo)
        object.__setattr__(self, "col_max", hi)

    def to_json(self) -> str:
        return json.dumps(
            {"min": self.col_min.tolist(), "max": self.col_max.tolist()}
        )

    @classmethod
    def from_json(cls, text: str) -> "NormParams":
        doc = json.loads(text)
        return cls(np.asarray(doc["min"]), np.asarray(doc["max"]))


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.6
    val_fraction: float = 0.2
    test_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        fracs = (self.train_fraction, self.val_fraction, self.test_fraction)
        if any(f < 0 for f in fracs):
            raise ValueError("fractions must be nonnegative")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise ValueError(f"fractions must sum to 1, got {sum(fracs)}")


def load_csv(
    path,
    kinds: list[str],
    has_header: bool = True,
    name: str | None = None,
) -> RawDataset:
    """Read a comma-delimited UTF-8 file into a RawDataset.

    Every row must have exactly len(kinds) cells; the header row, if
    present, is consumed (its names are kept for reference only).
    """
    rows: list[list[str]] = []
    names = None
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if not row:
                continue
            if i == 0 and has_header:
                if len(row) != len(kinds):
                    raise ValueError(
                        f"header has {len(row)} columns, expected {len(kinds)}"
                    )
                names = [c.strip() for c in row]
                continue
            if len(row) != len(kinds):
                raise ValueError(
                    f"row {i} has {len(row)} cells, expected {len(kinds)}"
                )
            rows.append([c.strip() for c in row])
    return RawDataset(
        rows=rows,
        column_kinds=list(kinds),
        name=name or str(path),
        column_names=names,
    )


def one_hot_encode(raw: RawDataset) -> NumericDataset:
    """Encode categoricals as one-hot blocks and peel off the label column.

    Categories are ordered lexicographically so the column layout is
    reproducible across runs; the encoder fails fast on unparseable
    numeric cells.
    """
    base_names = raw.column_names or [f"c{j}" for j in range(len(raw.column_kinds))]
    columns: list[np.ndarray] = []
    feature_names: list[str] = []
    labels = None

    for j, kind in enumerate(raw.column_kinds):
        cells = [row[j] for row in raw.rows]
        if kind == "numeric":
            try:
                col = np.array([float(c) for c in cells], dtype=float)
            except ValueError as exc:
                raise ValueError(
                    f"column {j} ({base_names[j]}): unparseable numeric cell: {exc}"
                ) from exc
            columns.append(col.reshape(-1, 1))
            feature_names.append(base_names[j])
        elif kind == "categorical":
            cats = sorted(set(cells))
            block = np.zeros((len(cells), len(cats)), dtype=float)
            index = {c: i for i, c in enumerate(cats)}
            for i, c in enumerate(cells):
                block[i, index[c]] = 1.0
            columns.append(block)
            feature_names.extend(f"{base_names[j]}={c}" for c in cats)
        else:  # label
            try:
                labels = np.array([int(float(c)) for c in cells], dtype=int)
            except ValueError as exc:
                raise ValueError(
                    f"label column {j}: labels must be 0/1: {exc}"
                ) from exc

    if columns:
        matrix = np.hstack(columns)
    else:
        matrix = np.zeros((raw.n_rows, 0))
    return NumericDataset(matrix=matrix, labels=labels, feature_names=feature_names)


def fit_minmax(train: NumericDataset) -> NormParams:
    if train.n_rows == 0:
        raise ValueError("cannot fit normalization on an empty dataset")
    return NormParams(
        col_min=train.matrix.min(axis=0), col_max=train.matrix.max(axis=0)
    )


def apply_minmax(ds: NumericDataset, params: NormParams) -> NumericDataset:
    """Map x -> 2*(x - min)/(max - min) - 1; constant columns map to 0."""
    if ds.n_features != params.col_min.shape[0]:
        raise ValueError("column count does not match normalization params")
    span = params.col_max - params.col_min
    safe = np.where(span > 0, span, 1.0)
    scaled = 2.0 * (ds.matrix - params.col_min) / safe - 1.0
    scaled[:, span == 0] = 0.0
    return NumericDataset(
        matrix=scaled, labels=ds.labels, feature_names=list(ds.feature_names)
    )


def split_dataset(
    ds: NumericDataset, spec: SplitSpec
) -> tuple[NumericDataset, NumericDataset, NumericDataset]:
    """One-class split: train/val get only normal rows, test gets the
    held-out normals plus every anomaly."""
    if ds.labels is None:
        raise ValueError("split requires labels")
    normal_idx = np.flatnonzero(ds.labels == 0)
    anomaly_idx = np.flatnonzero(ds.labels == 1)
    if normal_idx.size == 0:
        raise ValueError("dataset contains no normal rows")

    rng = np.random.default_rng(spec.seed)
    order = rng.permutation(normal_idx)
    n = order.size
    n_train = int(round(spec.train_fraction * n))
    n_val = int(round(spec.val_fraction * n))
    if n_train == 0:
        raise ValueError("train fraction yields an empty training set")
    train_idx = order[:n_train]
    val_idx = order[n_train : n_train + n_val]
    test_idx = np.concatenate([order[n_train + n_val :], anomaly_idx])

    def take(idx):
        return NumericDataset(
            matrix=ds.matrix[idx],
            labels=ds.labels[idx],
            feature_names=list(ds.feature_names),
        )

    return take(train_idx), take(val_idx), take(test_idx)


def subsample(ds: NumericDataset, fraction: float, seed: int) -> NumericDataset:
    """Seeded uniform row subsample (used to shrink oversized training sets)."""
    if not 0 < fraction <= 1:
        raise ValueError("fraction must be in (0, 1]")
    if fraction == 1.0:
        return ds
    rng = np.random.default_rng(seed)
    keep = max(1, int(round(fraction * ds.n_rows)))
    idx = np.sort(rng.permutation(ds.n_rows)[:keep])
    return NumericDataset(
        matrix=ds.matrix[idx],
        labels=None if ds.labels is None else ds.labels[idx],
        feature_names=list(ds.feature_names),
    )


def synth_shifted_gaussian(
    n_normal: int, n_anomaly: int, dim: int, shift: float, seed: int
) -> NumericDataset:
    """Desk-scale fixture: normals ~ N(0, I), anomalies mean-shifted by
    `shift` along every axis."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    normals = rng.standard_normal((n_normal, dim))
    anomalies = rng.standard_normal((n_anomaly, dim)) + shift
    matrix = np.vstack([normals, anomalies])
    labels = np.concatenate(
        [np.zeros(n_normal, dtype=int), np.ones(n_anomaly, dtype=int)]
    )
    return NumericDataset(matrix=matrix, labels=labels)

"""Command line entry points: prepare, run, report."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import data
from .experiment import ExperimentConfig, render_report, run_experiment, write_report


def _write_split_csv(path, ds: data.NumericDataset) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ds.feature_names + ["label"])
        labels = ds.labels if ds.labels is not None else np.zeros(ds.n_rows, int)
        for row, label in zip(ds.matrix, labels):
            writer.writerow(list(row) + [int(label)])


def cmd_prepare(args) -> int:
    kinds = [k.strip() for k in args.kinds.split(",")]
    raw = data.load_csv(args.csv, kinds, has_header=not args.no_header)
    ds = data.one_hot_encode(raw)
    spec = data.SplitSpec(
        train_fraction=args.train,
        val_fraction=args.val,
        test_fraction=args.test,
        seed=args.seed,
    )
    train, val, test = data.split_dataset(ds, spec)
    if args.subsample:
        train = data.subsample(train, args.subsample, args.seed)
    params = data.fit_minmax(train)

    os.makedirs(args.out, exist_ok=True)
    _write_split_csv(os.path.join(args.out, "train.csv"), data.apply_minmax(train, params))
    _write_split_csv(os.path.join(args.out, "val.csv"), data.apply_minmax(val, params))
    _write_split_csv(os.path.join(args.out, "test.csv"), data.apply_minmax(test, params))
    with open(os.path.join(args.out, "normparams.json"), "w", encoding="utf-8") as fh:
        fh.write(params.to_json())
    print(
        f"wrote train ({train.n_rows}), val ({val.n_rows}), "
        f"test ({test.n_rows}) to {args.out}"
    )
    return 0


def cmd_run(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.repetitions is not None:
        cfg.repetitions = args.repetitions
    if args.output_dir is not None:
        cfg.output_dir = args.output_dir
    if args.methods:
        cfg.methods = [m.strip() for m in args.methods.split(",")]
    if args.detectors:
        cfg.detectors = [d.strip() for d in args.detectors.split(",")]
    report = run_experiment(cfg)
    path = write_report(report, cfg.output_dir)
    print(render_report(json.loads(report.to_json())))
    print(f"\nreport written to {path}")
    return 0


def cmd_report(args) -> int:
    with open(args.report, encoding="utf-8") as fh:
        doc = json.load(fh)
    if "aggregates" not in doc:
        raise ValueError(f"{args.report} is not an experiment report")
    print(render_report(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latentaug",
        description="Latent-space training-set augmentation experiments "
        "for one-class anomaly detection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="encode, normalize and split a CSV dataset")
    p.add_argument("--csv", required=True, help="input CSV path")
    p.add_argument(
        "--kinds",
        required=True,
        help="comma-separated column kinds (numeric|categorical|label)",
    )
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--train", type=float, default=0.6)
    p.add_argument("--val", type=float, default=0.2)
    p.add_argument("--test", type=float, default=0.2)
    p.add_argument("--subsample", type=float, default=None,
                   help="keep this fraction of the training split")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("run", help="run the full experiment from a JSON config")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--output-dir", default=None)
    p.add_argument("--methods", default=None,
                   help="comma-separated augmenter filter")
    p.add_argument("--detectors", default=None,
                   help="comma-separated detector filter")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="render an existing report.json as a table")
    p.add_argument("report", help="path to report.json")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line harness: generate datasets, render matrices, extract
features, classify.

Stages communicate through files (edge lists + manifest, feature CSVs, JSON
reports) so each stage is independently testable and externally computed
features can enter at the CSV boundary.  All randomness flows from ``--seed``
and every run with the same flags is byte-identical.  ``NETCLASS_THREADS``
sets the worker count for feature extraction; output does not depend on it.
"""

from __future__ import annotations

import argparse
import os
import sys
from multiprocessing import get_context
from pathlib import Path

import numpy as np

from .classify import LabeledDataset, evaluate
from .features import (
    FeatureError,
    clbp_features,
    hu_moments,
    projection,
    render_pgm,
    write_feature_csv,
)
from .generators import (
    MANIFEST_NAME,
    PRESETS,
    generate,
    preset_rows,
    read_manifest,
    write_manifest,
)
from .graph import read_edge_list, write_edge_list
from .metrics import METRIC_ORDER, structural_features
from .ordering import sorted_adjacency


def _threads() -> int:
    raw = os.environ.get("NETCLASS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"NETCLASS_THREADS must be an integer, got {raw!r}") from None


def parse_extractor(text: str):
    """Split an extractor id into (kind, metric selection).

    ``projection``, ``clbp`` and ``hu`` stand alone; ``structural`` takes an
    optional suffix, e.g. ``structural:combined`` (the default) or
    ``structural:k`` or ``structural:pp,cl``.
    """
    kind, _, rest = text.partition(":")
    if kind in ("projection", "clbp", "hu"):
        if rest:
            raise ValueError(f"extractor {kind!r} takes no arguments")
        return kind, None
    if kind == "structural":
        which = rest or "combined"
        if which == "combined":
            return kind, "combined"
        ids = tuple(w for w in which.split(",") if w)
        bad = [w for w in ids if w not in METRIC_ORDER]
        if bad or not ids:
            raise ValueError(
                f"unknown structural metrics {bad}; choose from {METRIC_ORDER}"
            )
        return kind, ids
    raise ValueError(
        f"unknown extractor {text!r}; choose projection, clbp, hu, or structural[:...]"
    )


def _feature_row(task):
    path, kind, which = task
    g = read_edge_list(path)
    try:
        if kind == "structural":
            values = structural_features(g, which)
        else:
            aprime = sorted_adjacency(g)
            if kind == "projection":
                values = projection(aprime)
            elif kind == "clbp":
                values = clbp_features(aprime)
            else:
                values = hu_moments(aprime)
    except ValueError as exc:
        raise FeatureError(f"{path}: {exc}") from None
    return values.tolist()


def cmd_generate(args) -> int:
    rows = preset_rows(args.preset, args.seed, count_override=args.count)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rel_paths = []
    for row in rows:
        name = row.filename()
        write_edge_list(generate(row.spec), out / name)
        rel_paths.append(name)
    write_manifest(rows, rel_paths, out / MANIFEST_NAME)
    print(f"wrote {len(rows)} graphs and {MANIFEST_NAME} to {out}")
    return 0


def cmd_render(args) -> int:
    g = read_edge_list(args.graph)
    data = render_pgm(sorted_adjacency(g), dilate=args.dilate)
    Path(args.out).write_bytes(data)
    print(f"wrote {args.out}")
    return 0


def cmd_features(args) -> int:
    kind, which = parse_extractor(args.extractor)
    manifest = Path(args.manifest)
    triples = read_manifest(manifest)
    if not triples:
        raise FeatureError(f"{manifest}: empty manifest")
    base = manifest.parent
    tasks = [(str(base / p), kind, which) for p, _, _ in triples]
    labels = [label for _, label, _ in triples]
    threads = _threads()
    if threads > 1 and len(tasks) > 1:
        with get_context("spawn").Pool(threads) as pool:
            rows = pool.map(_feature_row, tasks, chunksize=max(1, len(tasks) // (4 * threads)))
    else:
        rows = [_feature_row(t) for t in tasks]
    write_feature_csv(args.out, labels, np.array(rows, dtype=np.float64))
    print(f"wrote {len(rows)} x {len(rows[0])} features to {args.out}")
    return 0


def cmd_classify(args) -> int:
    from .features import read_feature_csv

    labels, feats = read_feature_csv(args.features)
    dataset = LabeledDataset(feats, tuple(labels), extractor=args.extractor_id)
    report = evaluate(
        dataset,
        classifier=args.classifier,
        folds=args.folds,
        seed=args.seed,
        knn_k=args.knn_k,
        svm_c=args.svm_c,
        svm_epochs=args.svm_epochs,
    )
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="utf-8")
    print(report.summary_cell())
    print(report.confusion_text())
    if args.out:
        print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netclass",
        description="Classify complex networks from sorted adjacency matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a preset dataset to disk")
    p.add_argument("--preset", required=True, choices=PRESETS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=None,
                   help="override replicates per cell (smoke tests)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", help="render a graph's sorted matrix as PGM")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--out", required=True)
    p.add_argument("--dilate", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("features", help="extract features for a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--extractor", required=True,
                   help="projection | clbp | hu | structural[:combined|:ids]")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("classify", help="cross-validate a feature CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--classifier", required=True, choices=("knn", "svm"))
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="report JSON path")
    p.add_argument("--extractor-id", default="external",
                   help="extractor name recorded in the report")
    p.add_argument("--knn-k", type=int, default=1)
    p.add_argument("--svm-c", type=float, default=1.0)
    p.add_argument("--svm-epochs", type=int, default=30)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Run the desk-scale experiment battery end to end and print a summary.

Generates both desk presets, extracts each descriptor, cross-validates with
1-NN and linear SVM, and prints one `mean (std)` cell per combination, plus
the confusion matrix of the headline runs.  Everything goes through the same
CLI code paths a user would call, so the artifacts (edge lists, manifests,
feature CSVs, report JSONs) are left under --workdir for inspection.

Expect roughly 5-10 minutes single-threaded; set NETCLASS_THREADS to spread
feature extraction over cores.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from netclass.cli import main as cli

EXPERIMENTS = [
    ("synthetic-desk", "projection", "knn"),
    ("synthetic-desk", "projection", "svm"),
    ("synthetic-desk", "hu", "knn"),
    ("synthetic-desk", "structural:combined", "svm"),
    ("scalefree-desk", "projection", "knn"),
    ("scalefree-desk", "hu", "knn"),
    ("scalefree-desk", "clbp", "knn"),
]


def run(args):
    work = Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    datasets = {}
    for preset in sorted({p for p, _, _ in EXPERIMENTS}):
        out = work / preset
        if not (out / "manifest.csv").exists():
            print(f"== generating {preset} (seed {args.seed})")
            if cli(["gen", "--preset", preset, "--seed", str(args.seed),
                    "--out", str(out)]):
                return 1
        datasets[preset] = out / "manifest.csv"

    results = []
    for preset, extractor, classifier in EXPERIMENTS:
        tag = f"{preset}_{extractor.replace(':', '-').replace(',', '+')}"
        csv = work / f"{tag}.csv"
        if not csv.exists():
            print(f"== features: {extractor} over {preset}")
            t0 = time.perf_counter()
            if cli(["features", "--manifest", str(datasets[preset]),
                    "--extractor", extractor, "--out", str(csv)]):
                return 1
            print(f"   {time.perf_counter() - t0:.0f}s")
        report = work / f"{tag}_{classifier}.json"
        if cli(["classify", "--features", str(csv), "--classifier", classifier,
                "--seed", str(args.seed), "--extractor-id", extractor,
                "--out", str(report)]):
            return 1
        doc = json.loads(report.read_text())
        results.append((preset, extractor, classifier, doc))

    print()
    print(f"{'dataset':<16} {'extractor':<22} {'clf':<4} {'CCR mean (std)':<16} macro AUC")
    for preset, extractor, classifier, doc in results:
        cell = f"{doc['mean_ccr']:.2f} ({doc['std_ccr']:.2f})"
        auc = doc["auc"]["macro"]
        auc_text = f"{auc:.4f}" if auc is not None else "-"
        print(f"{preset:<16} {extractor:<22} {classifier:<4} {cell:<16} {auc_text}")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--workdir", default="desk-experiments")
    parser.add_argument("--seed", type=int, default=7)
    sys.exit(run(parser.parse_args()))

"""Experiment driver: train on augmented batches, test on the originals,
and write a results table (method x fold x {train, validate, predict})."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import data
from .train import TrainProtocol, train_and_eval


def evaluate_batch(corpus_dir: Path, batch_dir: Path,
                   protocol: TrainProtocol, seed: int) -> dict:
    originals = data.read_corpus(corpus_dir)
    manifest, synthetic = data.read_batch(batch_dir)
    data.check_test_train_disjoint(originals, synthetic)
    x, y = data.to_tensors(synthetic)
    test_x, test_y = data.to_tensors(originals)
    result = train_and_eval(x, y, test_x, test_y, protocol, seed)
    return {
        "method": manifest["method"],
        "fold": manifest["plan"]["base_fold"],
        "train_acc": result.train_acc,
        "validate_acc": result.val_acc,
        "predict_acc": result.predict_acc,
        "n_train_items": len(synthetic),
        "n_test_items": len(originals),
        "run_seeds": " ".join(str(s) for s in result.run_seeds),
        "n_params": result.n_params,
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dleval",
        description="Train the 1D CNN on augmented batches and test on the originals",
    )
    parser.add_argument("--corpus", required=True, help="directory of original trials")
    parser.add_argument("--batch", nargs="+", required=True,
                        help="one or more augmented batch directories")
    parser.add_argument("--out", required=True, help="results CSV path")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--runs", type=int, default=3)
    parser.add_argument("--epochs", type=int, default=20)
    args = parser.parse_args(argv)

    protocol = TrainProtocol(runs=args.runs, epochs=args.epochs)
    rows = []
    try:
        for batch_dir in args.batch:
            row = evaluate_batch(Path(args.corpus), Path(batch_dir), protocol, args.seed)
            print(f"{row['method']} (fold {row['fold']}): "
                  f"train {row['train_acc']:.3f}  validate {row['validate_acc']:.3f}  "
                  f"predict {row['predict_acc']:.3f}")
            rows.append(row)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

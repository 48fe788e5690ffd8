"""Trial files and batch manifests.

A trial is a CSV with header ``t,ax,ay,az`` (one row per sample, ``t`` a
strictly increasing sample index) plus a JSON sidecar
``<trial_id>.meta.json`` with trial_id, subject_id, score and sample rate.
Floats are written with 17 significant digits so a write/read round trip
is field-exact.  A batch directory additionally carries ``manifest.json``
listing every emitted file with its provenance and the fold plan used.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import Channel, Dataset, ScoredTrial, Series
from .pipeline import AugmentedBatch, FoldPlan, Method

TRIAL_COLUMNS = ("t", "ax", "ay", "az")
MANIFEST_NAME = "manifest.json"
MANIFEST_FORMAT = "ts4aug-batch-manifest/1"


def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_trial(trial: ScoredTrial, directory: Path, provenance: dict | None = None) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / f"{trial.trial_id}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRIAL_COLUMNS)
        for t in range(trial.n):
            writer.writerow([
                t,
                _fmt(trial.x.samples[t]),
                _fmt(trial.y.samples[t]),
                _fmt(trial.z.samples[t]),
            ])
    meta = {
        "trial_id": trial.trial_id,
        "subject_id": trial.subject_id,
        "score": trial.score,
        "sample_rate_hz": trial.x.sample_rate_hz,
    }
    if provenance:
        meta["provenance"] = provenance
    with open(directory / f"{trial.trial_id}.meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path


def read_trial(csv_path: Path) -> ScoredTrial:
    csv_path = Path(csv_path)
    meta_path = csv_path.parent / (csv_path.stem + ".meta.json")
    with open(meta_path) as fh:
        meta = json.load(fh)
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TRIAL_COLUMNS:
            raise ValueError(f"{csv_path}: expected header {','.join(TRIAL_COLUMNS)}")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{csv_path}: no samples")
    if any(len(r) != 4 for r in rows):
        raise ValueError(f"{csv_path}: expected 4 columns per row")
    t = np.array([float(r[0]) for r in rows])
    if np.any(np.diff(t) <= 0):
        raise ValueError(f"{csv_path}: t column must be strictly increasing")
    rate = float(meta["sample_rate_hz"])
    cols = {
        Channel.X: np.array([float(r[1]) for r in rows]),
        Channel.Y: np.array([float(r[2]) for r in rows]),
        Channel.Z: np.array([float(r[3]) for r in rows]),
    }
    return ScoredTrial(
        trial_id=meta["trial_id"],
        subject_id=meta["subject_id"],
        score=int(meta["score"]),
        x=Series(cols[Channel.X], rate, Channel.X),
        y=Series(cols[Channel.Y], rate, Channel.Y),
        z=Series(cols[Channel.Z], rate, Channel.Z),
    )


def read_corpus(directory: Path) -> Dataset:
    directory = Path(directory)
    paths = sorted(directory.glob("*.csv"))
    if not paths:
        raise FileNotFoundError(f"no trial files under {directory}")
    return Dataset(tuple(read_trial(p) for p in paths))


def write_batch(batch: AugmentedBatch, directory: Path) -> Path:
    """Write every synthetic trial plus the manifest; reruns with the same
    batch overwrite byte-identically."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for item in batch.items:
        prov = {
            "method": item.provenance.method.value,
            "source_trial_id": item.provenance.source_trial_id,
            "fold_index": item.provenance.fold_index,
            "seed": item.provenance.seed,
        }
        path = write_trial(item.trial, directory, provenance=prov)
        entries.append({
            "file": path.name,
            "trial_id": item.trial.trial_id,
            "subject_id": item.trial.subject_id,
            "score": item.trial.score,
            **prov,
        })
    manifest = {
        "format": MANIFEST_FORMAT,
        "method": batch.method.value,
        "base_seed": batch.base_seed.seed,
        "plan": {
            "base_fold": batch.plan.base_fold,
            "per_class_multiplier": {
                str(k): v for k, v in sorted(batch.plan.per_class_multiplier.items())
            },
        },
        "items": entries,
        "skips": [{"trial_id": s.trial_id, "reason": s.reason} for s in batch.skips],
    }
    manifest_path = directory / MANIFEST_NAME
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest_path


def read_manifest(directory: Path) -> dict:
    path = Path(directory) / MANIFEST_NAME
    with open(path) as fh:
        manifest = json.load(fh)
    if manifest.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"{path}: unknown manifest format {manifest.get('format')!r}")
    missing = [e["file"] for e in manifest["items"]
               if not (Path(directory) / e["file"]).exists()]
    if missing:
        raise FileNotFoundError(f"{path}: listed files missing: {missing[:5]}")
    return manifest


def manifest_plan(manifest: dict) -> FoldPlan:
    plan = manifest["plan"]
    return FoldPlan(
        base_fold=int(plan["base_fold"]),
        per_class_multiplier={int(k): int(v) for k, v in plan["per_class_multiplier"].items()},
    )


def manifest_method(manifest: dict) -> Method:
    return Method(manifest["method"])

"""Readers for the augmentation toolkit's file formats.

This package talks to the toolkit only through its published formats: one
CSV per trial (header ``t,ax,ay,az``) with a ``<trial_id>.meta.json``
sidecar, and a ``manifest.json`` per batch directory carrying provenance.
Trials become fixed-length float32 tensors of shape (91, 3): longer
series are truncated at the end, shorter ones zero-padded at the end.
Scores map to three classes with {0, 1} merged.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

INPUT_LENGTH = 91
SCORE_TO_CLASS = {0: 0, 1: 0, 2: 1, 3: 2}
N_CLASSES = 3


class OrphanEntry(KeyError):
    pass


@dataclass(frozen=True)
class TrialRecord:
    trial_id: str
    subject_id: str
    score: int
    samples: np.ndarray  # (n, 3) float32, axes x/y/z
    provenance: dict | None = None


def read_trial(csv_path: Path) -> TrialRecord:
    csv_path = Path(csv_path)
    meta = json.loads((csv_path.parent / (csv_path.stem + ".meta.json")).read_text())
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["t", "ax", "ay", "az"]:
            raise ValueError(f"{csv_path}: unexpected header {header}")
        rows = [(float(r[1]), float(r[2]), float(r[3])) for r in reader]
    return TrialRecord(
        trial_id=meta["trial_id"],
        subject_id=meta["subject_id"],
        score=int(meta["score"]),
        samples=np.asarray(rows, dtype=np.float32),
        provenance=meta.get("provenance"),
    )


def read_corpus(directory: Path) -> list[TrialRecord]:
    paths = sorted(Path(directory).glob("*.csv"))
    if not paths:
        raise FileNotFoundError(f"no trial files under {directory}")
    return [read_trial(p) for p in paths]


def read_batch(directory: Path) -> tuple[dict, list[TrialRecord]]:
    """Read a batch via its manifest; a listed-but-missing file aborts
    with the offending trial id."""
    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    records = []
    for entry in manifest["items"]:
        path = directory / entry["file"]
        if not path.exists():
            raise OrphanEntry(entry["trial_id"])
        records.append(read_trial(path))
    return manifest, records


def fix_length(samples: np.ndarray, length: int = INPUT_LENGTH) -> np.ndarray:
    """Truncate from the end or zero-pad at the end to ``length`` rows."""
    if samples.shape[0] >= length:
        return samples[:length]
    out = np.zeros((length, samples.shape[1]), dtype=samples.dtype)
    out[: samples.shape[0]] = samples
    return out


def to_tensors(records: list[TrialRecord]) -> tuple[np.ndarray, np.ndarray]:
    x = np.stack([fix_length(r.samples) for r in records]).astype(np.float32)
    y = np.array([SCORE_TO_CLASS[r.score] for r in records], dtype=np.int64)
    return x, y


def check_test_train_disjoint(
    originals: list[TrialRecord], synthetic: list[TrialRecord]
) -> None:
    """The test set must hold originals only, never synthetic items."""
    synth_ids = {r.trial_id for r in synthetic}
    overlap = synth_ids & {r.trial_id for r in originals}
    if overlap:
        raise ValueError(f"synthetic items leak into the test set: {sorted(overlap)[:5]}")
    leaked = [r.trial_id for r in originals if r.provenance is not None]
    if leaked:
        raise ValueError(f"test items carry synthesis provenance: {leaked[:5]}")

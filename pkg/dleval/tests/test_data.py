import json
import subprocess
import sys

import numpy as np
import pytest

from dleval import data


def test_fix_length_identity():
    x = np.arange(91 * 3, dtype=np.float32).reshape(91, 3)
    np.testing.assert_array_equal(data.fix_length(x), x)


def test_fix_length_truncates_tail():
    x = np.arange(100 * 3, dtype=np.float32).reshape(100, 3)
    out = data.fix_length(x)
    np.testing.assert_array_equal(out, x[:91])


def test_fix_length_pads_tail_with_zeros():
    x = np.ones((50, 3), dtype=np.float32)
    out = data.fix_length(x)
    assert out.shape == (91, 3)
    assert np.all(out[:50] == 1) and np.all(out[50:] == 0)


def test_score_to_class_merges_low_scores():
    assert data.SCORE_TO_CLASS == {0: 0, 1: 0, 2: 1, 3: 2}


def _write_trial(directory, trial_id, n=20, score=3, provenance=None):
    rows = "\n".join(f"{t},{t % 5},{t % 7},{t % 3}" for t in range(n))
    (directory / f"{trial_id}.csv").write_text(f"t,ax,ay,az\n{rows}\n")
    meta = {"trial_id": trial_id, "subject_id": "p1", "score": score,
            "sample_rate_hz": 30.0}
    if provenance:
        meta["provenance"] = provenance
    (directory / f"{trial_id}.meta.json").write_text(json.dumps(meta))


def test_read_trial_and_tensors(tmp_path):
    _write_trial(tmp_path, "a1", n=20, score=2)
    _write_trial(tmp_path, "a2", n=95, score=0)
    records = data.read_corpus(tmp_path)
    x, y = data.to_tensors(records)
    assert x.shape == (2, 91, 3) and x.dtype == np.float32
    assert list(y) == [1, 0]


def test_read_batch_orphan_aborts_with_id(tmp_path):
    _write_trial(tmp_path, "real")
    manifest = {"format": "ts4aug-batch-manifest/1", "method": "ts4",
                "plan": {"base_fold": 1, "per_class_multiplier": {}},
                "items": [{"file": "ghost.csv", "trial_id": "ghost-1"}]}
    (tmp_path / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(data.OrphanEntry, match="ghost-1"):
        data.read_batch(tmp_path)


def test_test_train_disjointness_guard(tmp_path):
    _write_trial(tmp_path, "orig")
    synth_dir = tmp_path / "synth"
    synth_dir.mkdir()
    _write_trial(synth_dir, "orig")  # same id leaking into both sides
    originals = data.read_corpus(tmp_path)
    synthetic = data.read_corpus(synth_dir)
    with pytest.raises(ValueError):
        data.check_test_train_disjoint(originals, synthetic)
    # provenance on a "test" item is also a leak
    prov_dir = tmp_path / "prov"
    prov_dir.mkdir()
    _write_trial(prov_dir, "s1", provenance={"method": "ts4"})
    with pytest.raises(ValueError):
        data.check_test_train_disjoint(data.read_corpus(prov_dir), [])


def test_reads_real_toolkit_output(tmp_path):
    """The reader consumes whatever the augmentation CLI actually emits."""
    corpus = tmp_path / "corpus"
    rc = subprocess.run(
        [sys.executable, "-m", "ts4aug.cli", "gen-corpus", "--out", str(corpus),
         "--n-per-class", "1", "--seed", "3"],
        capture_output=True, text=True,
    )
    assert rc.returncode == 0, rc.stderr
    records = data.read_corpus(corpus)
    assert len(records) == 3
    x, y = data.to_tensors(records)
    assert x.shape == (3, 91, 3)
    assert set(y) == {0, 1, 2}

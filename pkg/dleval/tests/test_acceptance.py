"""Secondary acceptance: harness sanity on toy corpora, the parameter
budget, and the end-to-end directional check that shape-preserving
augmentation trains at least as well as surrogate-only augmentation.
Run with ``pytest -s`` to see the PASS lines.
"""

import functools
import subprocess
import sys
import time

import numpy as np

from dleval.harness import evaluate_batch
from dleval.model import build_model
from dleval.train import TrainProtocol, train_and_eval


def check(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE FAIL — {name}")
                raise
            print(f"\nACCEPTANCE PASS — {name}")

        return wrapper

    return deco


def toy_corpus(n_per_class=30, seed=0, shuffle_labels=False):
    """Classes separable by a constant offset."""
    rng = np.random.default_rng(seed)
    xs, ys = [], []
    for cls, offset in enumerate((-30.0, 0.0, 30.0)):
        for _ in range(n_per_class):
            xs.append(offset + rng.normal(0, 3, (91, 3)))
            ys.append(cls)
    x = np.asarray(xs, dtype=np.float32)
    y = np.asarray(ys, dtype=np.int64)
    if shuffle_labels:
        y = rng.permutation(y)
    return x, y


@check("Parameter budget: trainable count within 20% of 26,800")
def test_parameter_budget():
    n = build_model().count_params()
    assert 26_800 * 0.8 <= n <= 26_800 * 1.2, n


@check("Harness sanity: separable toy corpus scores > 0.95, shuffled labels near chance; < 5 min")
def test_harness_sanity():
    start = time.perf_counter()
    protocol = TrainProtocol(runs=3)

    x, y = toy_corpus(seed=1)
    test_x, test_y = toy_corpus(n_per_class=10, seed=2)
    result = train_and_eval(x, y, test_x, test_y, protocol, seed=5)
    assert result.predict_acc > 0.95, result

    xs, ys = toy_corpus(seed=3, shuffle_labels=True)
    shuffled = train_and_eval(xs, ys, test_x, test_y, protocol, seed=6)
    assert abs(shuffled.predict_acc - 1 / 3) <= 0.18, shuffled

    elapsed = time.perf_counter() - start
    assert elapsed < 300, f"harness sanity took {elapsed:.0f} s"


def _run_toolkit(*args):
    rc = subprocess.run([sys.executable, "-m", "ts4aug.cli", *args],
                        capture_output=True, text=True)
    assert rc.returncode == 0, rc.stderr
    return rc.stdout


@check("End-to-end: TS4 10-fold predict accuracy >= surrogate-only 10-fold (medians of 3 runs)")
def test_end_to_end_directional(tmp_path):
    corpus = tmp_path / "corpus"
    _run_toolkit("gen-corpus", "--out", str(corpus), "--n-per-class", "6", "--seed", "17")
    accs = {}
    for method in ("ts4", "surrogate"):
        batch = tmp_path / method
        _run_toolkit("augment", "--in", str(corpus), "--out", str(batch),
                     "--method", method, "--fold", "10",
                     "--multipliers", "3=1,2=1,1=1", "--seed", "17")
        row = evaluate_batch(corpus, batch, TrainProtocol(runs=3), seed=9)
        accs[method] = row["predict_acc"]
        print(f"  {method}: predict {row['predict_acc']:.3f} "
              f"(train {row['train_acc']:.3f}, validate {row['validate_acc']:.3f})")
    assert accs["ts4"] >= accs["surrogate"], accs

"""Training protocol and the repeated-run evaluation loop.

Protocol: mini-batch 20 over 20 epochs, Adam starting at learning rate
0.001 with inverse-time decay 1e-6 per step, accuracy as the learning
metric; 80% of the augmented batch trains, 20% validates, and the
original (unaugmented) trials are the test set.  Every evaluation runs at
least three times with distinct seeds and reports the median of each
accuracy; a run whose loss goes non-finite is retried with a fresh seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import keras
import numpy as np

from .model import build_model


@dataclass(frozen=True)
class TrainProtocol:
    batch_size: int = 20
    epochs: int = 20
    learning_rate: float = 1e-3
    decay: float = 1e-6
    validation_fraction: float = 0.2
    runs: int = 3
    max_nan_retries: int = 5


@dataclass(frozen=True)
class EvalResult:
    train_acc: float
    val_acc: float
    predict_acc: float
    run_seeds: tuple[int, ...]
    n_params: int


def _train_once(train, val, test, protocol: TrainProtocol, seed: int) -> dict | None:
    """One seeded run; returns None when the loss went non-finite."""
    keras.utils.set_random_seed(seed)
    model = build_model()
    schedule = keras.optimizers.schedules.InverseTimeDecay(
        protocol.learning_rate, decay_steps=1, decay_rate=protocol.decay
    )
    model.compile(
        optimizer=keras.optimizers.Adam(schedule),
        loss="sparse_categorical_crossentropy",
        metrics=["accuracy"],
    )
    history = model.fit(
        *train,
        validation_data=val,
        batch_size=protocol.batch_size,
        epochs=protocol.epochs,
        verbose=0,
    )
    if not all(math.isfinite(v) for v in history.history["loss"]):
        return None
    _, train_acc = model.evaluate(*train, verbose=0)
    _, val_acc = model.evaluate(*val, verbose=0)
    _, predict_acc = model.evaluate(*test, verbose=0)
    return {
        "train_acc": float(train_acc),
        "val_acc": float(val_acc),
        "predict_acc": float(predict_acc),
        "n_params": model.count_params(),
    }


def train_and_eval(
    x: np.ndarray,
    y: np.ndarray,
    test_x: np.ndarray,
    test_y: np.ndarray,
    protocol: TrainProtocol | None = None,
    seed: int = 0,
) -> EvalResult:
    """Split the augmented tensors 80/20, train ``runs`` times with
    distinct seeds and report the medians."""
    protocol = protocol or TrainProtocol()
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(x))
    n_val = max(1, int(round(protocol.validation_fraction * len(x))))
    val_idx, train_idx = order[:n_val], order[n_val:]
    train = (x[train_idx], y[train_idx])
    val = (x[val_idx], y[val_idx])
    test = (test_x, test_y)

    results = []
    seeds_used = []
    attempt = 0
    while len(results) < protocol.runs:
        if attempt >= protocol.runs + protocol.max_nan_retries:
            raise RuntimeError("training diverged repeatedly (non-finite loss)")
        run_seed = seed * 1000 + attempt
        attempt += 1
        out = _train_once(train, val, test, protocol, run_seed)
        if out is None:
            continue
        results.append(out)
        seeds_used.append(run_seed)

    return EvalResult(
        train_acc=float(np.median([r["train_acc"] for r in results])),
        val_acc=float(np.median([r["val_acc"] for r in results])),
        predict_acc=float(np.median([r["predict_acc"] for r in results])),
        run_seeds=tuple(seeds_used),
        n_params=results[0]["n_params"],
    )

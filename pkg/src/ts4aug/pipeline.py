"""TS4 composition and batch augmentation planning.

TS4 splits a series into three additive parts: the transient residual,
the SSA shape (trend and cycles of the cleaned signal) and the SSA
low-level remainder.  Only the low level is randomized by the surrogate
stage; transients and shape are passed through verbatim, so a synthetic
series follows the original's envelope while its fine structure varies.

Batch generation applies one of the four methods per trial, channel and
fold with a derived seed each, so batches are reproducible, parallelizable
and free of seed collisions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .core import Channel, Dataset, RngSeed, ScoredTrial, Series, as_seed, zero_mean
from .distort import DistortConfig, window_slice, window_warp
from .metrics import FidelityReport, compare
from .ssa import SsaConfig, decompose, split_shape_lowlevel
from .surrogate import aaft
from .transient import SpectrogramConfig, TransientConfig, detect_transients


class Method(Enum):
    TS4 = "ts4"
    SURROGATE_ONLY = "surrogate"
    WINDOW_SLICE = "slice"
    WINDOW_WARP = "warp"


@dataclass(frozen=True)
class Ts4Config:
    ssa: SsaConfig = field(default_factory=SsaConfig)
    spectrogram: SpectrogramConfig = field(default_factory=SpectrogramConfig)
    transient: TransientConfig = field(default_factory=TransientConfig)
    base_seed: RngSeed = field(default_factory=lambda: RngSeed(0))


@dataclass(frozen=True)
class AugmentConfig:
    """Everything a batch run needs, whichever method it uses.

    ``allow_window_shrink`` retries a too-short series with the largest
    valid SSA window instead of skipping it.
    """

    ts4: Ts4Config = field(default_factory=Ts4Config)
    distort: DistortConfig = field(default_factory=DistortConfig)
    allow_window_shrink: bool = False


DEFAULT_MULTIPLIERS = {3: 1, 2: 1, 1: 6, 0: 12}


@dataclass(frozen=True)
class FoldPlan:
    """Fold increase with per-class multipliers boosting rare scores."""

    base_fold: int = 1
    per_class_multiplier: dict[int, int] = field(
        default_factory=lambda: dict(DEFAULT_MULTIPLIERS)
    )

    def __post_init__(self):
        if self.base_fold < 1:
            raise ValueError("base_fold must be >= 1")
        if any(m < 1 for m in self.per_class_multiplier.values()):
            raise ValueError("multipliers must be >= 1")

    def folds_for(self, score: int) -> int:
        return self.base_fold * self.per_class_multiplier.get(score, 1)


@dataclass(frozen=True)
class Provenance:
    method: Method
    source_trial_id: str
    fold_index: int
    seed: int


@dataclass(frozen=True)
class BatchItem:
    trial: ScoredTrial
    provenance: Provenance


@dataclass(frozen=True)
class SkipRecord:
    trial_id: str
    reason: str


@dataclass(frozen=True)
class AugmentedBatch:
    items: tuple[BatchItem, ...]
    plan: FoldPlan
    method: Method
    base_seed: RngSeed
    skips: tuple[SkipRecord, ...] = ()


def ts4_decompose(
    s: Series, cfg: Ts4Config | None = None
) -> tuple[Series, Series, Series]:
    """Split into (transient_diff, shape, low_level); the parts sum back
    to the input.  Transient detection is seeded from the config so the
    decomposition itself is deterministic.

    The cleaned signal is centred before SSA (a raw baseline would soak
    up the leading eigenvalue and push the whole movement into the low
    level); the mean belongs to the trend, so it is folded back into the
    shape part.
    """
    cfg = cfg or Ts4Config()
    tmap = detect_transients(s, cfg.spectrogram, cfg.transient, cfg.base_seed)
    centred, mean = zero_mean(tmap.cleaned)
    d = decompose(centred, cfg.ssa)
    shape, low = split_shape_lowlevel(d, cfg.ssa.grouping)
    return tmap.difference, shape.with_samples(shape.samples + mean), low


def ts4_synthesize(s: Series, cfg: Ts4Config | None = None, seed: RngSeed | int = 0) -> Series:
    """Keep transients and shape verbatim, surrogate only the low level,
    and recombine into a synthetic series of the same length."""
    cfg = cfg or Ts4Config()
    transient_diff, shape, low = ts4_decompose(s, cfg)
    surrogate_low = aaft(low, as_seed(seed))
    return s.with_samples(
        transient_diff.samples + shape.samples + surrogate_low.samples
    )


def plan_folds(class_counts: dict[int, int], plan: FoldPlan) -> dict[int, int]:
    """Synthetic count per score: original count x base fold x multiplier."""
    return {
        score: count * plan.folds_for(score) for score, count in class_counts.items()
    }


def _synthesize_channel(
    s: Series, method: Method, cfg: AugmentConfig, seed: RngSeed
) -> Series:
    if method is Method.TS4:
        ts4_cfg = cfg.ts4
        if cfg.allow_window_shrink and s.n < 2 * ts4_cfg.ssa.window_m:
            shrunk = replace(ts4_cfg.ssa, window_m=max(2, s.n // 2))
            ts4_cfg = replace(ts4_cfg, ssa=shrunk)
        return ts4_synthesize(s, ts4_cfg, seed)
    if method is Method.SURROGATE_ONLY:
        return aaft(s, seed)
    if method is Method.WINDOW_SLICE:
        return window_slice(s, cfg.distort, seed)
    if method is Method.WINDOW_WARP:
        return window_warp(s, cfg.distort, seed)
    raise ValueError(f"unknown method {method!r}")


def augment_batch(
    dataset: Dataset,
    method: Method,
    cfg: AugmentConfig | None = None,
    plan: FoldPlan | None = None,
    base_seed: RngSeed | int = 0,
) -> AugmentedBatch:
    """Generate the planned number of synthetic trials for every original.

    Each channel of each fold gets its own derived seed.  Series a method
    cannot handle (e.g. too short for the SSA window) are skipped and
    reported, never silently dropped.  Items come out sorted by
    (source trial id, fold index) for byte-stable downstream output.
    """
    cfg = cfg or AugmentConfig()
    plan = plan or FoldPlan()
    base_seed = as_seed(base_seed)

    items: list[BatchItem] = []
    skips: list[SkipRecord] = []
    for trial in sorted(dataset.trials, key=lambda t: t.trial_id):
        folds = plan.folds_for(trial.score)
        for fold in range(1, folds + 1):
            item_seed = base_seed.derive(trial.trial_id, fold)
            try:
                synth_channels = {
                    ch: _synthesize_channel(
                        series, method, cfg, item_seed.derive(ch.value)
                    )
                    for ch, series in trial.channels.items()
                }
            except ValueError as exc:
                skips.append(SkipRecord(trial.trial_id, str(exc)))
                break
            synth = ScoredTrial(
                trial_id=f"{trial.trial_id}-{method.value}-f{fold:04d}",
                subject_id=trial.subject_id,
                score=trial.score,
                x=synth_channels[Channel.X],
                y=synth_channels[Channel.Y],
                z=synth_channels[Channel.Z],
            )
            items.append(BatchItem(synth, Provenance(
                method=method,
                source_trial_id=trial.trial_id,
                fold_index=fold,
                seed=item_seed.seed,
            )))

    seeds = [item.provenance.seed for item in items]
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("derived seed collision within batch")
    return AugmentedBatch(
        items=tuple(items),
        plan=plan,
        method=method,
        base_seed=base_seed,
        skips=tuple(skips),
    )


@dataclass(frozen=True)
class PairReport:
    provenance: Provenance
    channel: Channel
    report: FidelityReport


@dataclass(frozen=True)
class AggregateFidelity:
    """Per-metric medians over all (pair, channel) reports of one method;
    zero-denominator pairs are excluded from the percent medians."""

    method: Method
    delta_mean_pct: float
    delta_std_pct: float
    acf_rmse: float
    dtw_pct: float
    n_pairs: int
    n_mean_excluded: int = 0
    n_std_excluded: int = 0


class MissingSource(KeyError):
    pass


def fidelity_report(
    batch: AugmentedBatch, dataset: Dataset, max_lag: int | None = None
) -> tuple[list[PairReport], AggregateFidelity]:
    """Compare every synthetic channel to its source channel and reduce
    to per-metric medians."""
    by_id = {t.trial_id: t for t in dataset.trials}
    pairs: list[PairReport] = []
    for item in batch.items:
        src = by_id.get(item.provenance.source_trial_id)
        if src is None:
            raise MissingSource(item.provenance.source_trial_id)
        for ch, synth_series in item.trial.channels.items():
            rep = compare(
                src.channels[ch],
                synth_series,
                max_lag=max_lag,
                pair_id=f"{item.trial.trial_id}/{ch.value}",
            )
            pairs.append(PairReport(item.provenance, ch, rep))
    return pairs, aggregate_pairs(batch.method, pairs)


def aggregate_pairs(method: Method, pairs: list[PairReport]) -> AggregateFidelity:
    means = [p.report.delta_mean_pct for p in pairs if not p.report.mean_absolute_fallback]
    stds = [p.report.delta_std_pct for p in pairs if not p.report.std_absolute_fallback]
    return AggregateFidelity(
        method=method,
        delta_mean_pct=float(np.median(means)) if means else float("nan"),
        delta_std_pct=float(np.median(stds)) if stds else float("nan"),
        acf_rmse=float(np.median([p.report.acf_rmse for p in pairs])) if pairs else float("nan"),
        dtw_pct=float(np.median([p.report.dtw_pct for p in pairs])) if pairs else float("nan"),
        n_pairs=len(pairs),
        n_mean_excluded=len(pairs) - len(means),
        n_std_excluded=len(pairs) - len(stds),
    )

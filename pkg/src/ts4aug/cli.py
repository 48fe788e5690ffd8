"""Command-line front end.

Subcommands: ``gen-corpus`` (synthetic labelled corpus), ``augment``
(batch synthesis with a manifest), ``report`` (fidelity table across
batches) and ``decompose`` (per-series component files plus plot-ready ACF
and spectrogram tables).  Every command is deterministic given its full
argument list including the seed.  Exit codes: 0 success (including
reported skips), 1 I/O or validation failure, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .core import Channel, RngSeed
from .corpus import CorpusConfig, generate_corpus
from .distort import DistortConfig, WarpMode
from .metrics import ConstantSeries, acf, compare
from .pipeline import (
    AugmentConfig,
    FoldPlan,
    Method,
    PairReport,
    Provenance,
    Ts4Config,
    aggregate_pairs,
    augment_batch,
    ts4_decompose,
)
from .ssa import GroupingRule, SsaConfig
from .transient import SpectrogramConfig, TransientConfig, spectrogram

_METHOD_ALIASES = {
    "ts4": Method.TS4,
    "surrogate": Method.SURROGATE_ONLY,
    "slice": Method.WINDOW_SLICE,
    "warp": Method.WINDOW_WARP,
}


def load_config(path: str | None) -> AugmentConfig:
    """Build the run configuration, overriding defaults from a JSON file."""
    if path is None:
        return AugmentConfig()
    with open(path) as fh:
        raw = json.load(fh)
    known = {"ssa", "spectrogram", "transient", "distort", "allow_window_shrink"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")

    ssa_raw = dict(raw.get("ssa", {}))
    grouping = GroupingRule.cumulative_variance()
    if "grouping" in ssa_raw:
        g = ssa_raw.pop("grouping")
        if g["kind"] == "cumulative_variance":
            grouping = GroupingRule.cumulative_variance(float(g.get("fraction", 0.90)))
        elif g["kind"] == "fixed_count":
            grouping = GroupingRule.fixed_count(int(g["count"]))
        else:
            raise ValueError(f"unknown grouping kind {g['kind']!r}")
    ssa_cfg = SsaConfig(window_m=int(ssa_raw.pop("window_m", 17)), grouping=grouping)
    if ssa_raw:
        raise ValueError(f"unknown ssa config keys: {sorted(ssa_raw)}")

    sp_cfg = SpectrogramConfig(**raw.get("spectrogram", {}))
    tr_cfg = TransientConfig(**raw.get("transient", {}))
    distort_raw = dict(raw.get("distort", {}))
    if "warp_scale" in distort_raw:
        distort_raw["warp_scale"] = WarpMode(distort_raw["warp_scale"])
    distort_cfg = DistortConfig(**distort_raw)
    return AugmentConfig(
        ts4=Ts4Config(ssa=ssa_cfg, spectrogram=sp_cfg, transient=tr_cfg),
        distort=distort_cfg,
        allow_window_shrink=bool(raw.get("allow_window_shrink", False)),
    )


def _parse_multipliers(text: str | None) -> dict[int, int]:
    if text is None:
        return dict(FoldPlan().per_class_multiplier)
    out = {}
    for part in text.split(","):
        score, mult = part.split("=")
        out[int(score)] = int(mult)
    return out


def cmd_gen_corpus(args) -> int:
    load_config(args.config)  # validate only; generation has no module knobs
    cfg = CorpusConfig(
        n_per_class=args.n_per_class,
        median_length=args.median_length,
        four_class=args.four_class,
        seed=RngSeed(args.seed),
    )
    dataset = generate_corpus(cfg)
    out = Path(args.out)
    for trial in dataset.trials:
        io.write_trial(trial, out)
    print(f"wrote {len(dataset)} trials to {out}")
    return 0


def cmd_augment(args) -> int:
    cfg = load_config(args.config)
    # base_seed also seeds the transient stage's clustering
    cfg = AugmentConfig(
        ts4=Ts4Config(
            ssa=cfg.ts4.ssa,
            spectrogram=cfg.ts4.spectrogram,
            transient=cfg.ts4.transient,
            base_seed=RngSeed(args.seed),
        ),
        distort=cfg.distort,
        allow_window_shrink=cfg.allow_window_shrink,
    )
    dataset = io.read_corpus(Path(args.input))
    plan = FoldPlan(base_fold=args.fold, per_class_multiplier=_parse_multipliers(args.multipliers))
    batch = augment_batch(
        dataset, _METHOD_ALIASES[args.method], cfg, plan, RngSeed(args.seed)
    )
    manifest_path = io.write_batch(batch, Path(args.out))
    print(f"wrote {len(batch.items)} synthetic trials to {args.out}")
    for skip in batch.skips:
        print(f"skipped {skip.trial_id}: {skip.reason}", file=sys.stderr)
    print(f"manifest: {manifest_path}")
    return 0


def cmd_report(args) -> int:
    load_config(args.config)  # validate only; reporting takes no module knobs
    originals = io.read_corpus(Path(args.originals))
    by_id = {t.trial_id: t for t in originals.trials}
    rows = []
    pair_rows = []
    for batch_dir in args.batch:
        manifest = io.read_manifest(Path(batch_dir))
        method = io.manifest_method(manifest)
        pairs = []
        for entry in manifest["items"]:
            src = by_id.get(entry["source_trial_id"])
            if src is None:
                raise KeyError(
                    f"{entry['trial_id']}: source {entry['source_trial_id']} "
                    f"not found under {args.originals}"
                )
            synth = io.read_trial(Path(batch_dir) / entry["file"])
            prov = Provenance(method, entry["source_trial_id"], entry["fold_index"], entry["seed"])
            for ch, series in synth.channels.items():
                rep = compare(src.channels[ch], series, max_lag=args.max_lag,
                              pair_id=f"{synth.trial_id}/{ch.value}")
                pairs.append(PairReport(prov, ch, rep))
                pair_rows.append([
                    method.value, synth.trial_id, ch.value,
                    f"{rep.delta_mean_pct:.17g}", f"{rep.delta_std_pct:.17g}",
                    f"{rep.acf_rmse:.17g}", f"{rep.dtw_pct:.17g}",
                    int(rep.mean_absolute_fallback), int(rep.std_absolute_fallback),
                ])
        agg = aggregate_pairs(method, pairs)
        rows.append(agg)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "delta_mean_pct", "delta_std_pct",
                         "acf_rmse", "dtw_pct", "n_pairs",
                         "n_mean_excluded", "n_std_excluded"])
        for agg in rows:
            writer.writerow([
                agg.method.value, f"{agg.delta_mean_pct:.17g}",
                f"{agg.delta_std_pct:.17g}", f"{agg.acf_rmse:.17g}",
                f"{agg.dtw_pct:.17g}", agg.n_pairs,
                agg.n_mean_excluded, agg.n_std_excluded,
            ])
    pairs_path = out.parent / (out.stem + ".pairs" + out.suffix)
    with open(pairs_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "trial_id", "channel", "delta_mean_pct",
                         "delta_std_pct", "acf_rmse", "dtw_pct",
                         "mean_absolute_fallback", "std_absolute_fallback"])
        writer.writerows(pair_rows)
    print(f"wrote {out} and {pairs_path}")
    return 0


def _write_series_csv(path: Path, values: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "value"])
        for t, v in enumerate(values):
            writer.writerow([t, format(v, ".17g")])


def cmd_decompose(args) -> int:
    trial = io.read_trial(Path(args.trial))
    channel = Channel(args.channel)
    series = trial.channels[channel]
    cfg = load_config(args.config)
    ts4_cfg = Ts4Config(
        ssa=cfg.ts4.ssa,
        spectrogram=cfg.ts4.spectrogram,
        transient=cfg.ts4.transient,
        base_seed=RngSeed(args.seed),
    )
    transient_diff, shape, low = ts4_decompose(series, ts4_cfg)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_series_csv(out / "transient_diff.csv", transient_diff.samples)
    _write_series_csv(out / "shape.csv", shape.samples)
    _write_series_csv(out / "low_level.csv", low.samples)

    try:
        r = acf(series)
    except ConstantSeries:
        r = []  # undefined for a constant channel; emit header only
    with open(out / "acf.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lag", "r"])
        for lag, value in enumerate(r):
            writer.writerow([lag, format(value, ".17g")])

    grid = spectrogram(series, ts4_cfg.spectrogram)
    with open(out / "spectrogram.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["col_start_sample", "freq_norm", "magnitude"])
        for ci, t0 in enumerate(grid.col_times):
            for bi, f in enumerate(grid.bin_freqs):
                writer.writerow([int(t0), format(f, ".17g"),
                                 format(grid.magnitudes[bi, ci], ".17g")])
    print(f"wrote decomposition of {trial.trial_id}/{channel.value} to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ts4aug",
        description="Statistics- and shape-preserving time-series augmentation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-corpus", help="generate a synthetic labelled corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--n-per-class", type=int, default=10)
    p.add_argument("--median-length", type=int, default=91)
    p.add_argument("--four-class", action="store_true",
                   help="also emit the score-0 archetype")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="JSON config; validated for uniformity")
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("augment", help="synthesize a batch from a corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=sorted(_METHOD_ALIASES), required=True)
    p.add_argument("--fold", type=int, default=1, help="base fold increase")
    p.add_argument("--multipliers",
                   help="per-score multipliers, e.g. '3=1,2=1,1=6,0=12' (the default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="JSON config overriding module defaults")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("report", help="fidelity table for one or more batches")
    p.add_argument("--originals", required=True)
    p.add_argument("--batch", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-lag", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="unused; kept for uniformity")
    p.add_argument("--config", help="JSON config; validated for uniformity")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("decompose", help="emit TS4 component files for one channel")
    p.add_argument("--trial", required=True, help="trial CSV path")
    p.add_argument("--channel", choices=[c.value for c in (Channel.X, Channel.Y, Channel.Z)],
                   required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="JSON config overriding module defaults")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

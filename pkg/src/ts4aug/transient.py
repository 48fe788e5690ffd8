"""Spectrogram-based detection and excision of prominent transients.

A transient shows up as a narrow, uniformly bright vertical strip in the
magnitude spectrogram: a column with a high mean across frequency bins and
a modest spread.  Detected sample spans are replaced by a straight line
between the neighbouring samples ("cleaned") and the removed part is kept
("difference") so that cleaned + difference restores the input sample-wise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RngSeed, Series, as_seed, require_valid, zero_mean


class SeriesTooShort(ValueError):
    pass


class TooFewPoints(ValueError):
    pass


@dataclass(frozen=True)
class SpectrogramConfig:
    """Short 2-sample rectangular frames, zero-padded to fft_size, hop 2
    (non-overlapping), one-sided magnitude spectra (129 bins for 256)."""

    window_len_samples: int = 2
    hop_samples: int = 2
    fft_size: int = 256
    magnitude: bool = True

    def __post_init__(self):
        if self.window_len_samples > self.fft_size:
            raise ValueError("window longer than fft_size")
        if self.hop_samples < 1:
            raise ValueError("hop must be >= 1")

    @property
    def n_bins(self) -> int:
        return self.fft_size // 2 + 1


@dataclass(frozen=True)
class SpectrogramGrid:
    magnitudes: np.ndarray  # (F bins, T columns), non-negative
    bin_freqs: np.ndarray  # F normalized frequencies in [0, 0.5]
    col_times: np.ndarray  # start sample index (0-based) of each column
    window_len: int
    hop: int


@dataclass(frozen=True)
class TransientConfig:
    """Thresholds stated for +/-128 raw ADC magnitude units."""

    mean_threshold: float = 50.0
    std_threshold: float = 80.0
    k_clusters: int = 3
    min_cluster_members: int = 2

    def __post_init__(self):
        if self.mean_threshold <= 0 or self.std_threshold <= 0:
            raise ValueError("thresholds must be positive")
        if self.k_clusters < 2:
            raise ValueError("k_clusters must be >= 2")


@dataclass(frozen=True)
class TransientMap:
    """spans are 0-based inclusive (start, end) sample index pairs, sorted
    and non-overlapping; cleaned + difference == input up to 1 ulp and the
    difference is exactly zero outside the spans."""

    spans: tuple[tuple[int, int], ...]
    difference: Series
    cleaned: Series


def spectrogram(s: Series, cfg: SpectrogramConfig | None = None) -> SpectrogramGrid:
    """One-sided magnitude spectrogram; column t is the zero-padded frame
    starting at sample t*hop, the trailing partial frame zero-padded."""
    cfg = cfg or SpectrogramConfig()
    require_valid(s)
    n = s.n
    if n < cfg.window_len_samples:
        raise SeriesTooShort(f"{n} samples < window {cfg.window_len_samples}")
    hop, wlen = cfg.hop_samples, cfg.window_len_samples
    n_cols = -(-n // hop)
    frames = np.zeros((n_cols, wlen))
    for t in range(n_cols):
        chunk = s.samples[t * hop : t * hop + wlen]
        frames[t, : len(chunk)] = chunk
    spec = np.abs(np.fft.rfft(frames, n=cfg.fft_size, axis=1)).T
    if not cfg.magnitude:
        spec = spec**2
    return SpectrogramGrid(
        magnitudes=spec,
        bin_freqs=np.arange(cfg.n_bins) / cfg.fft_size,
        col_times=np.arange(n_cols) * hop,
        window_len=wlen,
        hop=hop,
    )


def column_stats(g: SpectrogramGrid) -> tuple[np.ndarray, np.ndarray]:
    """Per-column mean and population (divide-by-F) standard deviation."""
    if g.magnitudes.size == 0:
        raise ValueError("empty spectrogram grid")
    return g.magnitudes.mean(axis=0), g.magnitudes.std(axis=0)


def kmeans_1d(
    values, k: int, seed: RngSeed | int, tol: float = 1e-9, max_iter: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic Lloyd k-means on scalars.

    The first centroid is drawn from the values under the seed, the rest by
    farthest-point seeding; assignment ties go to the lowest centroid
    index, and a cluster that empties out is re-seeded at the point
    farthest from its nearest centroid.  Returns (assignment, centroids).
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    if n < k:
        raise TooFewPoints(f"{n} values < k={k}")
    rng = as_seed(seed).generator()

    centroids = np.empty(k)
    centroids[0] = values[rng.integers(n)]
    nearest = np.abs(values - centroids[0])
    for j in range(1, k):
        centroids[j] = values[np.argmax(nearest)]
        nearest = np.minimum(nearest, np.abs(values - centroids[j]))

    for _ in range(max_iter):
        dist = np.abs(values[:, None] - centroids[None, :])
        assign = np.argmin(dist, axis=1)
        new = centroids.copy()
        for j in range(k):
            members = values[assign == j]
            if members.size:
                new[j] = members.mean()
            else:
                new[j] = values[np.argmax(dist.min(axis=1))]
        if np.max(np.abs(new - centroids)) < tol:
            centroids = new
            break
        centroids = new
    assign = np.argmin(np.abs(values[:, None] - centroids[None, :]), axis=1)
    return assign, centroids


def _interpolate_span(x: np.ndarray, start: int, end: int) -> np.ndarray:
    """Straight line across [start, end] anchored just outside the span;
    spans touching a series boundary fall back to the opposite anchor."""
    n = x.shape[0]
    left = x[start - 1] if start > 0 else None
    right = x[end + 1] if end < n - 1 else None
    length = end - start + 1
    if left is None and right is None:
        return np.full(length, x.mean())
    if left is None:
        return np.full(length, right)
    if right is None:
        return np.full(length, left)
    # positions start..end between anchors at start-1 and end+1
    frac = np.arange(1, length + 1) / (length + 1)
    return left + frac * (right - left)


def detect_transients(
    s: Series,
    sp_cfg: SpectrogramConfig | None = None,
    tr_cfg: TransientConfig | None = None,
    seed: RngSeed | int = 0,
) -> TransientMap:
    """Locate transient spans and excise them by linear interpolation.

    The signal is zero-meaned for the spectrogram only; outputs stay in
    input units.  Columns are clustered by mean, dropped when the mean is
    below ``mean_threshold`` or the std above ``std_threshold``, clusters
    with too few surviving members are discarded, and the remaining runs
    of adjacent columns map back to sample spans.  When nothing passes,
    the map is empty and ``cleaned`` equals the input.
    """
    sp_cfg = sp_cfg or SpectrogramConfig()
    tr_cfg = tr_cfg or TransientConfig()
    require_valid(s)
    x = s.samples
    n = s.n

    centred, _ = zero_mean(s)
    grid = spectrogram(centred, sp_cfg)
    means, stds = column_stats(grid)

    k = min(tr_cfg.k_clusters, means.shape[0])
    assign, _ = kmeans_1d(means, k, seed)

    keep = (means >= tr_cfg.mean_threshold) & (stds <= tr_cfg.std_threshold)
    for j in range(k):
        if np.count_nonzero(keep & (assign == j)) < tr_cfg.min_cluster_members:
            keep[assign == j] = False

    spans: list[tuple[int, int]] = []
    cols = np.flatnonzero(keep)
    run_start = None
    prev = None
    for c in cols:
        if run_start is None:
            run_start = prev = c
            continue
        if c == prev + 1:
            prev = c
            continue
        spans.append(_col_run_to_span(run_start, prev, grid, n))
        run_start = prev = c
    if run_start is not None:
        spans.append(_col_run_to_span(run_start, prev, grid, n))

    cleaned = x.copy()
    for a, b in spans:
        cleaned[a : b + 1] = _interpolate_span(x, a, b)
    difference = np.zeros(n)
    for a, b in spans:
        difference[a : b + 1] = x[a : b + 1] - cleaned[a : b + 1]

    return TransientMap(
        spans=tuple(spans),
        difference=s.with_samples(difference),
        cleaned=s.with_samples(cleaned),
    )


def _col_run_to_span(c0: int, c1: int, grid: SpectrogramGrid, n: int) -> tuple[int, int]:
    start = int(grid.col_times[c0])
    end = min(int(grid.col_times[c1]) + grid.window_len - 1, n - 1)
    return start, end

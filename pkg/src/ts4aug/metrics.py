"""Fidelity measures between an original and a synthesized series.

Four measures: percent change in mean, percent change in standard
deviation, RMS difference of the autocorrelation magnitudes, and a
z-normalized dynamic-time-warping distance divided by the series length
("DTW%").  Means and stds are computed over the value-sorted samples so
surrogate outputs, which permute the original values, report exactly zero
deltas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Series


class ZeroDenominator(ZeroDivisionError):
    pass


class ConstantSeries(ValueError):
    pass


@dataclass(frozen=True)
class FidelityReport:
    """One (original, synthetic) comparison.

    When the original's mean (or std) is zero, the matching delta holds
    the raw difference instead of a percentage and the fallback flag is
    set, so a degenerate pair never fails a whole batch report.
    """

    delta_mean_pct: float
    delta_std_pct: float
    acf_rmse: float
    dtw_pct: float
    pair_id: str = ""
    mean_absolute_fallback: bool = False
    std_absolute_fallback: bool = False


def _mean(x: np.ndarray) -> float:
    # summing in sorted order makes the result a function of the value
    # multiset only, so permutations give bit-identical means
    return float(np.sort(x).sum() / x.shape[0])


def _std(x: np.ndarray) -> float:
    m = _mean(x)
    d = np.sort(x) - m
    return float(np.sqrt(np.sort(d * d).sum() / x.shape[0]))


def delta_mean_pct(orig: Series, synth: Series) -> float:
    """100 * (mean(synth) - mean(orig)) / mean(orig)."""
    m = _mean(orig.samples)
    if m == 0.0:
        raise ZeroDenominator("original mean is zero")
    return 100.0 * (_mean(synth.samples) - m) / m


def delta_std_pct(orig: Series, synth: Series) -> float:
    """100 * (std(synth) - std(orig)) / std(orig), population convention."""
    sd = _std(orig.samples)
    if sd == 0.0:
        raise ZeroDenominator("original std is zero")
    return 100.0 * (_std(synth.samples) - sd) / sd


def acf(s: Series, max_lag: int | None = None) -> np.ndarray:
    """Biased normalized autocorrelation for lags 0..max_lag; r(0) = 1.

    r(tau) = sum_t (x_t - xbar)(x_{t+tau} - xbar) / sum_t (x_t - xbar)^2.
    """
    x = s.samples
    n = x.shape[0]
    if max_lag is None:
        max_lag = n - 1
    if max_lag >= n:
        raise ValueError(f"max_lag {max_lag} must be < N={n}")
    d = x - x.mean()
    energy = float(d @ d)
    if energy == 0.0:
        raise ConstantSeries("autocorrelation undefined for a constant series")
    full = np.correlate(d, d, mode="full")[n - 1 : n + max_lag]
    return full / energy


def acf_rmse(orig: Series, synth: Series, max_lag: int | None = None) -> float:
    """RMS difference of the two ACF magnitudes over lags 0..max_lag."""
    if max_lag is None:
        max_lag = min(orig.n, synth.n) - 1
    r_o = np.abs(acf(orig, max_lag))
    r_s = np.abs(acf(synth, max_lag))
    return float(np.sqrt(np.mean((r_o - r_s) ** 2)))


def _z_normalize(x: np.ndarray) -> np.ndarray:
    sd = x.std()
    if sd == 0.0:
        raise ConstantSeries("z-normalization undefined for a constant series")
    return (x - x.mean()) / sd


def dtw_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric DTW with |a-b| local cost and steps down/right/diagonal
    (insert, delete, match); unconstrained alignment window."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n, m = a.shape[0], b.shape[0]
    cost = np.abs(a[:, None] - b[None, :]).tolist()
    prev = list(np.cumsum(cost[0]))
    for i in range(1, n):
        row_cost = cost[i]
        cur = [row_cost[0] + prev[0]]
        for j in range(1, m):
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur.append(row_cost[j] + best)
        prev = cur
    return float(prev[-1])


def dtw_pct(orig: Series, synth: Series) -> float:
    """Z-normalize both series, run DTW, divide by the original's length
    and express the result x100."""
    if orig.n < 2 or synth.n < 2:
        raise ValueError("dtw_pct needs at least 2 samples per series")
    a = _z_normalize(orig.samples)
    b = _z_normalize(synth.samples)
    return 100.0 * dtw_distance(a, b) / orig.n


def compare(
    orig: Series, synth: Series, max_lag: int | None = None, pair_id: str = ""
) -> FidelityReport:
    """Full four-measure report with the zero-denominator fallbacks."""
    try:
        d_mean, mean_fb = delta_mean_pct(orig, synth), False
    except ZeroDenominator:
        d_mean, mean_fb = _mean(synth.samples) - _mean(orig.samples), True
    try:
        d_std, std_fb = delta_std_pct(orig, synth), False
    except ZeroDenominator:
        d_std, std_fb = _std(synth.samples) - _std(orig.samples), True
    return FidelityReport(
        delta_mean_pct=d_mean,
        delta_std_pct=d_std,
        acf_rmse=acf_rmse(orig, synth, max_lag),
        dtw_pct=dtw_pct(orig, synth),
        pair_id=pair_id,
        mean_absolute_fallback=mean_fb,
        std_absolute_fallback=std_fb,
    )

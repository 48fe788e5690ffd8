"""Window slicing and window warping baselines.

Both pick one random contiguous window of a fixed fraction of the series
(default 10%), delete or time-scale it, and linearly interpolate the
result back onto the original number of samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import RngSeed, Series, as_seed, require_valid


class SeriesTooShort(ValueError):
    pass


class WarpMode(Enum):
    EXPAND_2X = "expand_2x"
    CONTRACT_HALF = "contract_half"
    RANDOM = "random"


@dataclass(frozen=True)
class DistortConfig:
    window_fraction: float = 0.10
    warp_scale: WarpMode = WarpMode.RANDOM

    def __post_init__(self):
        if not (0.0 < self.window_fraction <= 0.5):
            raise ValueError("window_fraction must be in (0, 0.5]")


def _check_length(s: Series) -> int:
    require_valid(s)
    if s.n < 10:
        raise SeriesTooShort(f"need at least 10 samples, got {s.n}")
    return s.n


def _resample(values: np.ndarray, length: int) -> np.ndarray:
    return np.interp(
        np.linspace(0.0, values.shape[0] - 1.0, length),
        np.arange(values.shape[0]),
        values,
    )


def window_slice(
    s: Series, cfg: DistortConfig | None = None, seed: RngSeed | int = 0
) -> Series:
    """Delete one random window of round(fraction*N) samples and stretch
    the remainder back onto N uniform grid points."""
    cfg = cfg or DistortConfig()
    n = _check_length(s)
    w = max(1, round(cfg.window_fraction * n))
    rng = as_seed(seed).generator()
    start = int(rng.integers(0, n - w + 1))
    kept = np.concatenate([s.samples[:start], s.samples[start + w :]])
    return s.with_samples(_resample(kept, n))


def window_warp(
    s: Series, cfg: DistortConfig | None = None, seed: RngSeed | int = 0
) -> Series:
    """Time-scale one random window by 2x or 0.5x, splice it between the
    untouched flanks, then interpolate the whole thing back to length N."""
    cfg = cfg or DistortConfig()
    n = _check_length(s)
    w = max(2, round(cfg.window_fraction * n))
    rng = as_seed(seed).generator()
    start = int(rng.integers(0, n - w + 1))
    if cfg.warp_scale is WarpMode.RANDOM:
        scale = 2.0 if rng.integers(2) == 0 else 0.5
    elif cfg.warp_scale is WarpMode.EXPAND_2X:
        scale = 2.0
    else:
        scale = 0.5
    window = s.samples[start : start + w]
    warped = _resample(window, max(2, round(w * scale)))
    spliced = np.concatenate([s.samples[:start], warped, s.samples[start + w :]])
    return s.with_samples(_resample(spliced, n))

"""Domain types shared by every stage of the augmentation toolkit.

A :class:`Series` is one channel of a uniformly sampled signal; a
:class:`ScoredTrial` bundles the three accelerometer axes of one scored
movement; a :class:`Dataset` is a labelled collection of trials.  All of
these are immutable value objects, safe to share across workers.

Randomness is funnelled through :class:`RngSeed` so that the same seed and
the same inputs always produce bit-identical outputs, including when work
is fanned out per trial / channel / fold via :meth:`RngSeed.derive`.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Channel(Enum):
    X = "x"
    Y = "y"
    Z = "z"
    MONO = "mono"


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Series:
    """One channel of uniformly sampled real values.

    ``samples`` is stored as a read-only float64 array even when the source
    data is 8-bit integer; downstream eigen/FFT arithmetic needs floating
    point.  Construction is permissive (see :func:`validate_series`) so that
    malformed data can be loaded, diagnosed and reported.
    """

    samples: np.ndarray
    sample_rate_hz: float = 30.0
    channel: Channel = Channel.MONO

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_array(self.samples))

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    def with_samples(self, samples) -> "Series":
        """New Series with the same rate/channel but different samples."""
        return Series(samples, self.sample_rate_hz, self.channel)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[str, ...] = ()


def validate_series(s: Series) -> ValidationResult:
    """Diagnostic check of the Series invariants; never raises."""
    violations = []
    if s.n < 2:
        violations.append("length < 2")
    bad = np.flatnonzero(~np.isfinite(s.samples))
    for i in bad:
        violations.append(f"non-finite at index {i}")
    if not (s.sample_rate_hz > 0):
        violations.append("non-positive sample rate")
    return ValidationResult(ok=not violations, violations=tuple(violations))


def require_valid(s: Series) -> None:
    """Raise ValueError when a Series violates its invariants."""
    result = validate_series(s)
    if not result.ok:
        raise ValueError("invalid series: " + "; ".join(result.violations))


def zero_mean(s: Series) -> tuple[Series, float]:
    """Remove the sample mean, returning the centred series and the mean.

    Adding the mean back reproduces the input up to 1 ulp per sample.
    """
    require_valid(s)
    mean = float(np.mean(s.samples))
    return s.with_samples(s.samples - mean), mean


SCORES = (0, 1, 2, 3)


@dataclass(frozen=True)
class ScoredTrial:
    """One rehabilitative movement: three equal-length axis channels plus a
    clinician score in {0,1,2,3}."""

    trial_id: str
    subject_id: str
    score: int
    x: Series
    y: Series
    z: Series

    def __post_init__(self):
        if self.score not in SCORES:
            raise ValueError(f"score {self.score} not in {SCORES}")
        lengths = {self.x.n, self.y.n, self.z.n}
        if len(lengths) != 1:
            raise ValueError(f"channel lengths differ: {lengths}")
        rates = {self.x.sample_rate_hz, self.y.sample_rate_hz, self.z.sample_rate_hz}
        if len(rates) != 1:
            raise ValueError(f"channel sample rates differ: {rates}")

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def channels(self) -> dict[Channel, Series]:
        return {Channel.X: self.x, Channel.Y: self.y, Channel.Z: self.z}


@dataclass(frozen=True)
class Dataset:
    trials: tuple[ScoredTrial, ...]

    def __post_init__(self):
        object.__setattr__(self, "trials", tuple(self.trials))

    @property
    def class_counts(self) -> dict[int, int]:
        counts = Counter(t.score for t in self.trials)
        return {score: counts.get(score, 0) for score in sorted(counts)}

    def __len__(self) -> int:
        return len(self.trials)


_U64 = 2**64


@dataclass(frozen=True)
class RngSeed:
    """64-bit seed; equal seeds and inputs give bit-identical results."""

    seed: int

    def __post_init__(self):
        if not (0 <= self.seed < _U64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def derive(self, *parts) -> "RngSeed":
        """Stable sub-seed from (seed, parts); parts are str or int.

        Uses SHA-256 so derivation is reproducible across runs and
        platforms, unlike the salted built-in ``hash``.
        """
        h = hashlib.sha256(str(self.seed).encode())
        for part in parts:
            h.update(b"|")
            h.update(str(part).encode())
        return RngSeed(int.from_bytes(h.digest()[:8], "big"))


def as_seed(seed) -> RngSeed:
    """Coerce an int or RngSeed into an RngSeed."""
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))

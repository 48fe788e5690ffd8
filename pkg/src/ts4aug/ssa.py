"""Singular spectrum analysis of a single channel.

The series is embedded into a trajectory matrix of length-M sliding
windows, the M x M lag covariance is eigendecomposed, and principal
components are projected back into reconstructed components (RCs) by
diagonal averaging.  Summing all M RCs returns the original series
exactly, which is the identity the shape / low-level split relies on:
the leading components carry the trend and cycles (the "shape"), the
complement is the low-level residual handed to the surrogate stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Channel, Series, require_valid


class WindowTooLarge(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


class EigenFailure(RuntimeError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class GroupingRule:
    """How many leading components count as the signal's shape.

    ``cumulative_variance(f)`` keeps the smallest prefix of the sorted
    eigenvalues whose sum reaches the fraction ``f`` of the total;
    ``fixed_count(k)`` always keeps the first ``k``.
    """

    kind: str
    fraction: float | None = None
    count: int | None = None

    @staticmethod
    def cumulative_variance(fraction: float = 0.90) -> "GroupingRule":
        if not (0.0 < fraction <= 1.0):
            raise ValueError("fraction must be in (0, 1]")
        return GroupingRule(kind="cumulative_variance", fraction=fraction)

    @staticmethod
    def fixed_count(count: int) -> "GroupingRule":
        if count < 1:
            raise ValueError("count must be >= 1")
        return GroupingRule(kind="fixed_count", count=count)

    def significant_count(self, eigenvalues: np.ndarray) -> int:
        """Number of leading components considered significant."""
        m = len(eigenvalues)
        if self.kind == "fixed_count":
            if self.count > m:
                raise ValueError(f"fixed count {self.count} exceeds window {m}")
            return self.count
        cum = np.cumsum(eigenvalues)
        total = cum[-1]
        # degenerate zero trace: the whole signal is in (empty) component 1
        if total <= 0:
            return 1
        # cum can dip by ~1 ulp at the tail (tiny negative eigenvalues), so
        # scan for the first prefix reaching the target instead of bisecting
        target = self.fraction * total - 1e-12 * total
        hits = np.flatnonzero(cum >= target)
        return int(hits[0]) + 1 if hits.size else m


@dataclass(frozen=True)
class SsaConfig:
    window_m: int = 17
    grouping: GroupingRule = field(default_factory=GroupingRule.cumulative_variance)

    def __post_init__(self):
        if self.window_m < 2:
            raise ValueError("window_m must be >= 2")


@dataclass(frozen=True)
class SsaDecomposition:
    """Eigenpairs and principal components of one series.

    ``eigenvalues`` are sorted non-increasing; ``eigenvectors[k]`` is the
    k-th length-M eigenvector; ``pcs[k]`` the matching principal component
    of length N-M+1.  Components are numbered 1..M in rank order by the
    reconstruction API.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    pcs: np.ndarray
    source_length: int
    window_m: int
    sample_rate_hz: float = 30.0
    channel: Channel = Channel.MONO


def embed(s: Series, m: int) -> np.ndarray:
    """Trajectory matrix of shape (N-M+1, M); row i is x[i : i+M]."""
    require_valid(s)
    n = s.n
    if m < 2:
        raise WindowTooSmall(f"window {m} < 2")
    if m > n // 2:
        raise WindowTooLarge(f"window {m} > N/2 for N={n}")
    x = s.samples
    idx = np.arange(n - m + 1)[:, None] + np.arange(m)[None, :]
    return x[idx]


def covariance(y: np.ndarray, n: int) -> np.ndarray:
    """Lag covariance C = Y^T Y / N (divisor is the series length N)."""
    return y.T @ y / n


def decompose(s: Series, cfg: SsaConfig | None = None) -> SsaDecomposition:
    """Embed, eigendecompose and project the series.

    Eigenvalues come back sorted descending, ties broken by the solver's
    ascending index; eigenvector signs are fixed so the entry of largest
    magnitude is positive, keeping repeated runs bit-identical.
    """
    cfg = cfg or SsaConfig()
    m = cfg.window_m
    y = embed(s, m)
    c = covariance(y, s.n)
    try:
        vals, vecs = np.linalg.eigh(c)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    flip = vecs[np.argmax(np.abs(vecs), axis=0), np.arange(m)] < 0
    vecs[:, flip] *= -1.0
    pcs = (y @ vecs).T
    return SsaDecomposition(
        eigenvalues=vals,
        eigenvectors=vecs.T.copy(),
        pcs=pcs,
        source_length=s.n,
        window_m=m,
        sample_rate_hz=s.sample_rate_hz,
        channel=s.channel,
    )


def _diagonal_weights(n: int, m: int) -> np.ndarray:
    # 1-based position t: divisor t at the head, M in the middle, N-t+1 at the tail
    w = np.full(n, float(m))
    head = np.arange(1, m)
    w[: m - 1] = head
    w[n - m + 1 :] = head[::-1]
    return w


def reconstruct(d: SsaDecomposition, k_set) -> Series:
    """Sum the reconstructed components for the 1-based indices in k_set.

    Each RC is the diagonal average of its rank-one term; head and tail
    positions use the shorter antidiagonals' own lengths as divisors.
    """
    ks = sorted(set(int(k) for k in k_set))
    for k in ks:
        if not (1 <= k <= d.window_m):
            raise IndexOutOfRange(f"component {k} outside 1..{d.window_m}")
    total = np.zeros(d.source_length)
    for k in ks:
        total += np.convolve(d.pcs[k - 1], d.eigenvectors[k - 1])
    total /= _diagonal_weights(d.source_length, d.window_m)
    return Series(total, d.sample_rate_hz, d.channel)


def split_shape_lowlevel(
    d: SsaDecomposition, rule: GroupingRule | None = None
) -> tuple[Series, Series]:
    """Partition into (shape, low_level) by the grouping rule.

    The shape is the reconstruction over the significant leading
    components, the low level over the complement; the two always sum
    back to the decomposed series.
    """
    rule = rule or GroupingRule.cumulative_variance()
    k_sig = rule.significant_count(d.eigenvalues)
    shape = reconstruct(d, range(1, k_sig + 1))
    low = reconstruct(d, range(k_sig + 1, d.window_m + 1))
    return shape, low

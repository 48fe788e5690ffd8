"""Amplitude-adjusted, phase-randomized surrogate generation.

The output is always a permutation of the input's sample values, so the
sample distribution (and hence mean and standard deviation) is preserved
exactly, while the power spectrum / autocorrelation is preserved only
approximately through the phase-randomized Gaussian intermediate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RngSeed, Series, as_seed, require_valid


class SeriesTooShort(ValueError):
    pass


@dataclass(frozen=True)
class SurrogateTrace:
    """Diagnostic record of the intermediate vectors of one draw.

    Index vectors are 0-based permutations of 0..N-1.
    """

    rank_index_in: np.ndarray
    gaussianized: np.ndarray
    random_phases: np.ndarray
    phase_randomized_spectrum: np.ndarray
    rank_index_out: np.ndarray


def _rank_index(v: np.ndarray) -> np.ndarray:
    # rank of each element under an ascending stable sort (ties keep
    # original order; frequent with 8-bit data)
    return np.argsort(np.argsort(v, kind="stable"), kind="stable")


def aaft(
    s: Series, seed: RngSeed | int, return_trace: bool = False
) -> Series | tuple[Series, SurrogateTrace]:
    """Draw one amplitude-adjusted Fourier-transform surrogate.

    Steps: rank the input; shape sorted Gaussian deviates to those ranks;
    randomize the FFT phases of that Gaussian series (DC kept real, the
    Nyquist bin untouched, negative bins conjugate-mirrored so the inverse
    transform is real); then re-rank the input's sorted values to the
    phase-randomized series' ranks.
    """
    require_valid(s)
    x = s.samples
    n = s.n
    if n < 4:
        raise SeriesTooShort(f"need at least 4 samples, got {n}")
    rng = as_seed(seed).generator()

    x_sorted = np.sort(x, kind="stable")
    rank_in = _rank_index(x)

    gauss = np.sort(rng.standard_normal(n))
    shaped = gauss[rank_in]

    ft = np.fft.fft(shaped)
    phases = rng.uniform(0.0, 2.0 * np.pi, n // 2)
    ft_r = ft.copy()
    half = (n + 1) // 2  # bins 1..half-1 get new phases, DC stays real
    ft_r[1:half] = ft[1:half] * np.exp(1j * phases[: half - 1])
    ft_r[n - half + 1 :] = np.conj(ft_r[1:half][::-1])
    # even n leaves the Nyquist bin ft_r[n//2] unmodified

    randomized = np.fft.ifft(ft_r)
    scale = np.max(np.abs(randomized.real))
    assert np.max(np.abs(randomized.imag)) <= 1e-9 * max(scale, 1e-300), (
        "inverse FFT of a Hermitian spectrum should be real"
    )
    rank_out = _rank_index(randomized.real)

    out = s.with_samples(x_sorted[rank_out])
    if not return_trace:
        return out
    trace = SurrogateTrace(
        rank_index_in=rank_in,
        gaussianized=shaped,
        random_phases=phases,
        phase_randomized_spectrum=ft_r,
        rank_index_out=rank_out,
    )
    return out, trace

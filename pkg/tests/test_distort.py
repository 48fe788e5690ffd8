import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp
from scipy.interpolate import interp1d

from ts4aug.core import RngSeed, Series
from ts4aug.distort import (
    DistortConfig,
    SeriesTooShort,
    WarpMode,
    window_slice,
    window_warp,
)

value_arrays = hnp.arrays(
    np.float64,
    st.integers(min_value=10, max_value=200),
    elements=st.floats(min_value=-100, max_value=100, allow_nan=False),
)


def oracle_stretch(values, length):
    """Independent linear resampling via scipy."""
    f = interp1d(np.arange(len(values)), values, kind="linear")
    return f(np.linspace(0, len(values) - 1, length))


def test_slice_constant_identity():
    s = Series(np.full(50, 3.25))
    out = window_slice(s, seed=4)
    np.testing.assert_array_equal(out.samples, s.samples)


def test_warp_constant_identity():
    s = Series(np.full(50, -1.5))
    out = window_warp(s, seed=4)
    np.testing.assert_array_equal(out.samples, s.samples)


def test_slice_ramp_against_oracle():
    # find a seed whose uniform start draw lands on sample 40
    n, w = 100, 10
    seed = next(
        k for k in range(1000)
        if int(RngSeed(k).generator().integers(0, n - w + 1)) == 40
    )
    ramp = np.arange(100.0)
    out = window_slice(Series(ramp), DistortConfig(0.10), seed=seed)
    kept = np.concatenate([ramp[:40], ramp[50:]])
    np.testing.assert_allclose(out.samples, oracle_stretch(kept, 100), atol=1e-9)


def test_warp_expand_against_oracle():
    n = 100
    seed = 3
    start = int(RngSeed(seed).generator().integers(0, n - 10 + 1))
    ramp = np.arange(100.0) ** 1.5
    cfg = DistortConfig(0.10, WarpMode.EXPAND_2X)
    out = window_warp(Series(ramp), cfg, seed=seed)
    window = ramp[start : start + 10]
    spliced = np.concatenate([ramp[:start], oracle_stretch(window, 20), ramp[start + 10 :]])
    np.testing.assert_allclose(out.samples, oracle_stretch(spliced, 100), atol=1e-9)


def test_warp_contract_against_oracle():
    n = 60
    seed = 8
    start = int(RngSeed(seed).generator().integers(0, n - 6 + 1))
    x = np.sin(np.arange(60.0) / 5) * 40
    cfg = DistortConfig(0.10, WarpMode.CONTRACT_HALF)
    out = window_warp(Series(x), cfg, seed=seed)
    window = x[start : start + 6]
    spliced = np.concatenate([x[:start], oracle_stretch(window, 3), x[start + 6 :]])
    np.testing.assert_allclose(out.samples, oracle_stretch(spliced, 60), atol=1e-9)


@given(value_arrays, st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40)
def test_length_preserved_and_range_contained(x, seed):
    s = Series(x)
    for op in (window_slice, window_warp):
        out = op(s, seed=seed)
        assert out.n == s.n
        assert out.samples.min() >= x.min() - 1e-12
        assert out.samples.max() <= x.max() + 1e-12


def test_determinism():
    x = np.random.default_rng(0).normal(size=80)
    a = window_warp(Series(x), seed=5)
    b = window_warp(Series(x), seed=5)
    np.testing.assert_array_equal(a.samples, b.samples)


def test_too_short():
    with pytest.raises(SeriesTooShort):
        window_slice(Series(np.arange(9.0)), seed=0)
    with pytest.raises(SeriesTooShort):
        window_warp(Series(np.arange(9.0)), seed=0)


def test_config_validation():
    with pytest.raises(ValueError):
        DistortConfig(window_fraction=0.6)
    with pytest.raises(ValueError):
        DistortConfig(window_fraction=0.0)


def test_start_position_uniform():
    # chi-square over 10,000 seeds against the uniform law on valid starts
    n, w = 50, 5
    starts = [
        int(RngSeed(k).generator().integers(0, n - w + 1)) for k in range(10_000)
    ]
    counts = np.bincount(starts, minlength=n - w + 1)
    expected = 10_000 / (n - w + 1)
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    critical = scipy.stats.chi2.ppf(0.999, df=n - w)
    assert chi2 < critical

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from ts4aug.core import (
    Channel,
    Dataset,
    RngSeed,
    ScoredTrial,
    Series,
    as_seed,
    validate_series,
    zero_mean,
)

finite_arrays = hnp.arrays(
    np.float64,
    st.integers(min_value=2, max_value=200),
    elements=st.floats(min_value=-128, max_value=128, allow_nan=False),
)


def test_validate_constant_ok():
    assert validate_series(Series([0, 0, 0])).ok


def test_validate_nan_reports_index():
    result = validate_series(Series([1, np.nan]))
    assert not result.ok
    assert "non-finite at index 1" in result.violations


def test_validate_too_short():
    result = validate_series(Series([5]))
    assert not result.ok
    assert "length < 2" in result.violations


def test_validate_bad_rate():
    assert not validate_series(Series([1, 2], sample_rate_hz=0)).ok


def test_zero_mean_simple():
    out, mean = zero_mean(Series([1, 2, 3]))
    assert mean == 2.0
    np.testing.assert_array_equal(out.samples, [-1, 0, 1])


def test_zero_mean_of_zeros():
    out, mean = zero_mean(Series([0, 0, 0]))
    assert mean == 0.0
    np.testing.assert_array_equal(out.samples, [0, 0, 0])


@given(finite_arrays)
def test_zero_mean_result_is_centred(x):
    out, _ = zero_mean(Series(x))
    assert abs(out.samples.mean()) <= 1e-12 * max(np.max(np.abs(x)), 1.0)


@given(finite_arrays)
def test_zero_mean_invertible_to_one_ulp(x):
    out, mean = zero_mean(Series(x))
    restored = out.samples + mean
    # 1 ulp at the scale the subtraction worked at (sample or mean)
    scale = np.maximum(np.maximum(np.abs(x), np.abs(restored)), abs(mean))
    assert np.all(np.abs(restored - x) <= np.spacing(scale))


def _trial(trial_id="t1", score=3, n=4):
    mk = lambda ch: Series(np.arange(n, dtype=float), 30.0, ch)
    return ScoredTrial(trial_id, "p1", score, mk(Channel.X), mk(Channel.Y), mk(Channel.Z))


def test_trial_rejects_bad_score():
    with pytest.raises(ValueError):
        _trial(score=4)


def test_trial_rejects_unequal_lengths():
    good = Series([1.0, 2.0], 30.0, Channel.X)
    bad = Series([1.0, 2.0, 3.0], 30.0, Channel.Y)
    with pytest.raises(ValueError):
        ScoredTrial("t", "p", 2, good, bad, Series([1.0, 2.0], 30.0, Channel.Z))


def test_class_counts_sum_to_total():
    # population shape of the study the toolkit mirrors: 31/38/6/3
    trials = []
    for score, count in {3: 31, 2: 38, 1: 6, 0: 3}.items():
        trials += [_trial(f"s{score}n{i}", score) for i in range(count)]
    ds = Dataset(tuple(trials))
    assert ds.class_counts == {0: 3, 1: 6, 2: 38, 3: 31}
    assert sum(ds.class_counts.values()) == 78 == len(ds)


def test_seed_derivation_is_stable_and_distinct():
    s = RngSeed(7)
    assert s.derive("a", 1) == s.derive("a", 1)
    assert s.derive("a", 1) != s.derive("a", 2)
    assert s.derive("a", 1) != RngSeed(8).derive("a", 1)


def test_seed_bounds():
    with pytest.raises(ValueError):
        RngSeed(-1)
    with pytest.raises(ValueError):
        RngSeed(2**64)
    assert as_seed(5) == RngSeed(5)


def test_series_samples_are_read_only():
    s = Series([1.0, 2.0])
    with pytest.raises(ValueError):
        s.samples[0] = 9.0

import numpy as np

from ts4aug.core import RngSeed
from ts4aug.corpus import CorpusConfig, generate_corpus


def test_counts_and_default_classes():
    ds = generate_corpus(CorpusConfig(n_per_class=4, seed=RngSeed(1)))
    assert len(ds) == 12
    assert ds.class_counts == {1: 4, 2: 4, 3: 4}
    four = generate_corpus(CorpusConfig(n_per_class=4, four_class=True, seed=RngSeed(1)))
    assert four.class_counts == {0: 4, 1: 4, 2: 4, 3: 4}


def test_determinism():
    a = generate_corpus(CorpusConfig(n_per_class=3, seed=RngSeed(9)))
    b = generate_corpus(CorpusConfig(n_per_class=3, seed=RngSeed(9)))
    for ta, tb in zip(a.trials, b.trials):
        assert ta.trial_id == tb.trial_id
        for ch in ta.channels:
            np.testing.assert_array_equal(ta.channels[ch].samples, tb.channels[ch].samples)


def test_values_in_adc_range_and_integer():
    ds = generate_corpus(CorpusConfig(n_per_class=5, seed=RngSeed(2)))
    for trial in ds.trials:
        for s in trial.channels.values():
            assert s.samples.min() >= -128 and s.samples.max() <= 127
            np.testing.assert_array_equal(s.samples, np.round(s.samples))


def test_lengths_median_91_and_floor():
    ds = generate_corpus(CorpusConfig(n_per_class=334, seed=RngSeed(3)))
    lengths = [t.n for t in ds.trials]
    assert min(lengths) >= 40  # long enough for the default SSA window
    assert abs(np.median(lengths) - 91) <= 2


def test_scores_shape_the_archetype():
    # cleaner classes move more and shake less
    ds = generate_corpus(CorpusConfig(n_per_class=20, seed=RngSeed(4)))
    mean_len = {s: np.mean([t.n for t in ds.trials if t.score == s]) for s in (1, 2, 3)}
    assert mean_len[3] < mean_len[2] < mean_len[1]

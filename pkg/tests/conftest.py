import numpy as np
import pytest

from ts4aug.core import RngSeed
from ts4aug.corpus import CorpusConfig, generate_corpus


@pytest.fixture(scope="session")
def small_corpus():
    """Deterministic 30-trial corpus shared by the slower tests."""
    return generate_corpus(CorpusConfig(n_per_class=10, seed=RngSeed(42)))


@pytest.fixture(scope="session")
def corpus_series(small_corpus):
    return [s for tr in small_corpus.trials for s in tr.channels.values()]


def rel_rms(a: np.ndarray, b: np.ndarray) -> float:
    """Relative RMS error of a against reference b."""
    denom = np.sqrt(np.mean(b**2))
    if denom == 0.0:
        return float(np.sqrt(np.mean((a - b) ** 2)))
    return float(np.sqrt(np.mean((a - b) ** 2)) / denom)

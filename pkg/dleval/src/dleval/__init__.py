"""1D-CNN classification harness for augmented accelerometer corpora."""

from .data import (
    INPUT_LENGTH,
    N_CLASSES,
    SCORE_TO_CLASS,
    TrialRecord,
    fix_length,
    read_batch,
    read_corpus,
    read_trial,
    to_tensors,
)
from .model import build_model, load_model_spec
from .train import EvalResult, TrainProtocol, train_and_eval

__version__ = "0.1.0"

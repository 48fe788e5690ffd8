"""Statistics- and shape-preserving time-series augmentation toolkit."""

from .core import (
    Channel,
    Dataset,
    RngSeed,
    ScoredTrial,
    Series,
    ValidationResult,
    validate_series,
    zero_mean,
)
from .corpus import CorpusConfig, generate_corpus
from .distort import DistortConfig, WarpMode, window_slice, window_warp
from .metrics import (
    FidelityReport,
    acf,
    acf_rmse,
    compare,
    delta_mean_pct,
    delta_std_pct,
    dtw_distance,
    dtw_pct,
)
from .pipeline import (
    AugmentConfig,
    AugmentedBatch,
    FoldPlan,
    Method,
    Ts4Config,
    augment_batch,
    fidelity_report,
    plan_folds,
    ts4_decompose,
    ts4_synthesize,
)
from .ssa import (
    GroupingRule,
    SsaConfig,
    SsaDecomposition,
    decompose,
    embed,
    reconstruct,
    split_shape_lowlevel,
)
from .surrogate import SurrogateTrace, aaft
from .transient import (
    SpectrogramConfig,
    TransientConfig,
    TransientMap,
    detect_transients,
    kmeans_1d,
    spectrogram,
)

__version__ = "0.1.0"

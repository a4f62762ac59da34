"""Cache-tiled matrix multiplication benchmarking with formal ranking.

The package multiplies dense double-precision matrices through interchangeable
backends (untiled oracle, cache-tiled sequential, statically collapsed
parallel, task-queue pool, plus externally registered vendors), times the
arithmetic alone, and ranks backends by FLOPS with percentile-bootstrap
confidence intervals, a Welch heteroscedastic omnibus, and Games-Howell
pairwise tests.
"""

from .analysis import AnalysisReport, analyze_records, plot_rows, report_to_json
from .backends import (
    BackendDescriptor,
    BackendRegistry,
    PoolConfig,
    TileConfig,
    default_registry,
    naive_multiply,
    register_external,
    tiled_parallel_multiply,
    tiled_pool_multiply,
    tiled_seq_multiply,
)
from .errors import TilebenchError
from .harness import RunConfig, RunMetadata, TrialRecord, run_trials, time_once
from .matrices import GenSpec, flop_count, generate, max_abs_rel_diff
from .records import read_records, write_records
from .special import f_cdf, studentized_range_cdf, studentized_range_sf
from .stats import (
    AnovaResult,
    BootstrapSummary,
    PairwiseResult,
    Sample,
    bootstrap_ci,
    games_howell,
    percentile,
    sample_mean,
    sample_std,
    welch_anova,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AnovaResult",
    "BackendDescriptor",
    "BackendRegistry",
    "BootstrapSummary",
    "GenSpec",
    "PairwiseResult",
    "PoolConfig",
    "RunConfig",
    "RunMetadata",
    "Sample",
    "TileConfig",
    "TilebenchError",
    "TrialRecord",
    "analyze_records",
    "bootstrap_ci",
    "default_registry",
    "f_cdf",
    "flop_count",
    "games_howell",
    "generate",
    "max_abs_rel_diff",
    "naive_multiply",
    "percentile",
    "plot_rows",
    "read_records",
    "register_external",
    "report_to_json",
    "run_trials",
    "sample_mean",
    "sample_std",
    "studentized_range_cdf",
    "studentized_range_sf",
    "tiled_parallel_multiply",
    "tiled_pool_multiply",
    "tiled_seq_multiply",
    "time_once",
    "welch_anova",
    "write_records",
]

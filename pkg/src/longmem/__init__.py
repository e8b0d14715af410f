"""Long-memory analysis of price series: tick ingestion, resampling, log
returns, descriptive statistics, DFA Hurst estimation (single and rolling),
rank correlation, and synthetic long-memory generators."""

from .errors import (
    DataError,
    DegenerateSeriesError,
    EmptyInputError,
    ParseError,
    ValidationError,
)
from .ingest import (
    CsvConfig,
    TickRecord,
    TickSeries,
    parse_daily_csv,
    parse_tick_csv,
    write_table,
    write_tick_csv,
)
from .series import (
    PriceSeries,
    ReturnSeries,
    SamplingSpec,
    log_returns,
    resample_last,
    window,
    window_offsets,
)
from .stats import (
    DescriptiveStats,
    describe,
    jarque_bera,
    rolling_spearman,
    spearman_rho,
)
from .dfa import (
    DfaConfig,
    HurstEstimate,
    default_scales,
    fit_power_law,
    fluctuation,
    hurst_dfa,
    profile,
)
from .rolling import HurstSeries, align_hurst_with, rolling_hurst
from .synth import GeneratorSpec, ar1, fgn, fgn_autocovariance, generate, regime_concat, white_noise

__version__ = "0.1.0"

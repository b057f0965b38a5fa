"""Corpus frequency vs. word familiarity correlation toolkit."""

from famfreq.errors import (
    FamfreqError,
    IngestError,
    TargetNotReached,
    UndefinedCorrelation,
    UndefinedStatistic,
    ValidationError,
)
from famfreq.ingest import (
    FrequencyTable,
    LemmaMap,
    TokenizerConfig,
    count_corpus,
    count_files,
    merge_tables,
    prefix_table,
    tokenize,
)
from famfreq.familiarity import FamiliarityList, Histogram, load_famlist, rating_histogram, top_n_by_rating
from famfreq.correlation import (
    CorrelationReport,
    JoinedSeries,
    correlate,
    coverage,
    cross_correlate,
    join,
    pearson,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "FamfreqError",
    "IngestError",
    "TargetNotReached",
    "UndefinedCorrelation",
    "UndefinedStatistic",
    "ValidationError",
    "FrequencyTable",
    "LemmaMap",
    "TokenizerConfig",
    "count_corpus",
    "count_files",
    "merge_tables",
    "prefix_table",
    "tokenize",
    "FamiliarityList",
    "Histogram",
    "load_famlist",
    "rating_histogram",
    "top_n_by_rating",
    "CorrelationReport",
    "JoinedSeries",
    "correlate",
    "coverage",
    "cross_correlate",
    "join",
    "pearson",
    "spearman",
]

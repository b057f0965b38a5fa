"""Coverage, Pearson and Spearman correlation of log-frequency with familiarity.

Pearson is computed over covered words only. Spearman defaults to the
``rank-bottom`` treatment of missing words: a familiarity word that never
occurs in the corpus is given frequency 0, so all such words share the
lowest tied block of frequency ranks. Ties everywhere get average ranks.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from types import MappingProxyType
from typing import Callable, Mapping, NamedTuple, Optional

import numpy as np

from famfreq.errors import UndefinedCorrelation
from famfreq.familiarity import FamiliarityList
from famfreq.ingest import FrequencyTable

RANK_BOTTOM = "rank-bottom"
EXCLUDE = "exclude"
MISSING_MODES = (RANK_BOTTOM, EXCLUDE)


def log_function(base: float) -> Callable[[float], float]:
    """Logarithm in ``base``, exact on powers of 2 and 10 where the platform is."""
    if base == 10:
        return math.log10
    if base == 2:
        return math.log2
    if base == math.e:
        return math.log
    if not base > 0 or base == 1:
        raise ValueError(f"log base must be positive and != 1, got {base}")
    ln_base = math.log(base)
    return lambda x: math.log(x) / ln_base


def average_ranks(values) -> np.ndarray:
    """1-based ascending ranks; tied values share the mean of their positions."""
    v = np.asarray(values)
    n = v.shape[0]
    if n == 0:
        return np.empty(0)
    order = np.argsort(v, kind="mergesort")
    sv = v[order]
    starts_mask = np.empty(n, dtype=bool)
    starts_mask[0] = True
    np.not_equal(sv[1:], sv[:-1], out=starts_mask[1:])
    starts = np.flatnonzero(starts_mask)
    ends = np.append(starts[1:], n)
    block_rank = (starts + ends + 1) / 2.0
    ranks = np.empty(n)
    ranks[order] = block_rank[np.cumsum(starts_mask) - 1]
    return ranks


def pearson_arrays(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("series lengths differ")
    if x.size < 2:
        raise UndefinedCorrelation(f"need at least 2 points, got {x.size}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise UndefinedCorrelation("zero variance")
    dx = x - x.mean()
    dy = y - y.mean()
    # sqrt of the product: exact when the two variances are equal
    r = float(np.dot(dx, dy)) / math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    return min(1.0, max(-1.0, r))


def spearman_arrays(x, y) -> float:
    """Pearson correlation of the average ranks of ``x`` and ``y``."""
    return pearson_arrays(average_ranks(x), average_ranks(y))


class JoinedPair(NamedTuple):
    word: str
    log_frequency: float
    rating: float
    count: int


@dataclass(frozen=True)
class JoinedSeries:
    """Familiarity words split into covered pairs and missing words.

    ``missing`` maps each uncovered word to its rating; ratings are kept so
    the missing block can take part in rank-bottom Spearman.
    """

    pairs: tuple[JoinedPair, ...]
    missing: Mapping[str, float]

    @property
    def missing_words(self) -> frozenset:
        return frozenset(self.missing)

    def log_frequencies(self) -> np.ndarray:
        return np.array([p.log_frequency for p in self.pairs], dtype=float)

    def ratings(self) -> np.ndarray:
        return np.array([p.rating for p in self.pairs], dtype=float)

    def counts(self) -> np.ndarray:
        return np.array([p.count for p in self.pairs], dtype=float)


def join(freq: FrequencyTable, fam: FamiliarityList, log_base: float = 10) -> JoinedSeries:
    log = log_function(log_base)
    pairs = []
    missing = {}
    for word, rating in fam.items():
        c = freq.get(word, 0)
        if c > 0:
            pairs.append(JoinedPair(word, log(c), rating, c))
        else:
            missing[word] = rating
    return JoinedSeries(tuple(pairs), MappingProxyType(missing))


def pearson(series: JoinedSeries) -> float:
    """Product-moment coefficient of log-frequency vs. rating over covered words."""
    return pearson_arrays(series.log_frequencies(), series.ratings())


def spearman(series: JoinedSeries, missing_mode: str = RANK_BOTTOM) -> float:
    if missing_mode not in MISSING_MODES:
        raise ValueError(f"unknown missing mode {missing_mode!r}")
    # rank on raw counts: order-identical to log-frequency for any base
    freq = series.counts()
    rating = series.ratings()
    if missing_mode == RANK_BOTTOM and series.missing:
        freq = np.concatenate([freq, np.zeros(len(series.missing))])
        rating = np.concatenate([rating, np.fromiter(series.missing.values(), dtype=float)])
    return spearman_arrays(freq, rating)


@dataclass(frozen=True)
class CorrelationReport:
    covered: int
    coverage_pct: float
    pearson: Optional[float]
    spearman: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def coverage(freq: FrequencyTable, fam: FamiliarityList) -> tuple[int, float]:
    covered = sum(1 for w in fam if freq.get(w, 0) > 0)
    pct = 100.0 * covered / len(fam) if len(fam) else 0.0
    return covered, pct


def _or_none(fn, *args):
    try:
        return fn(*args)
    except UndefinedCorrelation:
        return None


def correlate(freq: FrequencyTable, fam: FamiliarityList, log_base: float = 10,
              missing_mode: str = RANK_BOTTOM) -> CorrelationReport:
    """One row of the coverage/correlation table; degenerate coefficients become ``None``."""
    series = join(freq, fam, log_base)
    covered = len(series.pairs)
    return CorrelationReport(
        covered=covered,
        coverage_pct=100.0 * covered / len(fam) if len(fam) else 0.0,
        pearson=_or_none(pearson, series),
        spearman=_or_none(spearman, series, missing_mode),
    )


def cross_correlate(a: FrequencyTable, b: FrequencyTable, fam: FamiliarityList,
                    log_base: float = 10) -> CorrelationReport:
    """Correlate two corpora over the familiarity list's words.

    Pearson uses words present in both tables. Spearman ranks every list
    word, with a word absent from a table counted as frequency 0 there.
    ``covered`` counts words present in both tables.
    """
    log = log_function(log_base)
    words = fam.words()
    ca = np.array([a.get(w, 0) for w in words], dtype=float)
    cb = np.array([b.get(w, 0) for w in words], dtype=float)
    both = (ca > 0) & (cb > 0)
    covered = int(both.sum())
    la = [log(c) for c in ca[both]]
    lb = [log(c) for c in cb[both]]
    return CorrelationReport(
        covered=covered,
        coverage_pct=100.0 * covered / len(words) if words else 0.0,
        pearson=_or_none(pearson_arrays, la, lb),
        spearman=_or_none(spearman_arrays, ca, cb),
    )

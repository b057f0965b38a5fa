"""Experimental procedures built on the correlation primitives.

* reversal simulation: how fast rank correlation decays under random
  adjacent swaps of a ranked list
* growth curves: correlation of nested corpus prefixes of increasing size
* fixed-K / top-N comparisons of corpora at equal sample size
* ranking-difference words, covered-word statistics, histograms and the
  rank-frequency power-law slope
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from famfreq.correlation import (
    RANK_BOTTOM,
    CorrelationReport,
    average_ranks,
    correlate,
    log_function,
)
from famfreq.errors import TargetNotReached, UndefinedStatistic
from famfreq.familiarity import FamiliarityList, Histogram, equal_width_histogram, top_n_by_rating
from famfreq.ingest import FrequencyTable, LemmaMap
from famfreq.synth import make_rng

PEARSON = "pearson"
SPEARMAN = "spearman"
METHODS = (PEARSON, SPEARMAN)


def _format_number(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


@dataclass(frozen=True)
class ExperimentCurve:
    points: tuple[tuple[float, float], ...]
    label: str = ""

    def __post_init__(self):
        xs = [x for x, _ in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve x values must be strictly increasing")
        if any(not -1.0 <= y <= 1.0 for _, y in self.points):
            raise ValueError("correlations must lie in [-1, 1]")

    @property
    def xs(self) -> list[float]:
        return [x for x, _ in self.points]

    @property
    def ys(self) -> list[float]:
        return [y for _, y in self.points]

    def to_tsv(self) -> str:
        lines = [f"# label={self.label}"] if self.label else []
        lines += [f"{_format_number(x)}\t{y!r}" for x, y in self.points]
        return "\n".join(lines) + "\n"


# --- reversal simulation ---------------------------------------------------


def swap_positions(n: int, count: int, seed: int) -> np.ndarray:
    """Uniform adjacent-swap positions ``i`` (swap ``i`` and ``i + 1``) for an n-item list."""
    if n < 2:
        raise ValueError("need at least 2 items to swap")
    return make_rng(seed).integers(0, n - 1, size=count)


class _ReversalState:
    """Ranked copy under adjacent swaps, tracking the sum of squared rank shifts."""

    def __init__(self, n: int):
        self.n = n
        self.order = np.arange(n)  # order[pos] = original rank index
        self.sum_d2 = 0
        self.scale = 6.0 / (n * (n * n - 1))

    def swap(self, i: int) -> float:
        order = self.order
        a, b = int(order[i]), int(order[i + 1])
        # d = position - original rank; a moves right, b moves left
        self.sum_d2 += 2 * ((i - a) - (i + 1 - b)) + 2
        order[i], order[i + 1] = b, a
        return self.rho

    @property
    def rho(self) -> float:
        return 1.0 - self.scale * self.sum_d2


def reversal_curve(fam: FamiliarityList, max_swaps: int, seed: int = 0) -> ExperimentCurve:
    """Spearman correlation of a progressively perturbed copy of the ranked list.

    The copy starts in rating order. Each step swaps the items at a random
    adjacent pair of positions (swaps accumulate and may overlap). Ranks are
    all distinct, so the coefficient is ``1 - 6 sum(d^2) / (n (n^2 - 1))``
    with ``sum(d^2)`` maintained exactly in integers.
    """
    n = len(fam)
    if n < 2:
        raise ValueError("reversal simulation needs at least 2 words")
    state = _ReversalState(n)
    points = [(0.0, 1.0)]
    for step, i in enumerate(swap_positions(n, max_swaps, seed), 1):
        points.append((float(step), state.swap(int(i))))
    return ExperimentCurve(tuple(points), label=f"reversal seed={seed}")


def swaps_to_reach(fam: FamiliarityList, target: float, seed: int = 0, cap: int = 1_000_000) -> int:
    """Swaps until the reversal correlation first drops to ``target`` or below.

    Raises :class:`TargetNotReached` (carrying ``cap`` and the final
    correlation) if the cap is hit first.
    """
    if not target < 1.0:
        raise ValueError("target must be below 1.0")
    n = len(fam)
    if n < 2:
        raise ValueError("reversal simulation needs at least 2 words")
    state = _ReversalState(n)
    for step, i in enumerate(swap_positions(n, cap, seed), 1):
        if state.swap(int(i)) <= target:
            return step
    raise TargetNotReached(cap, state.rho)


# --- corpus size / sampling experiments ---------------------------------------


def exponential_sizes(limit: int, base: int = 10) -> list[int]:
    """``base, base**2, ...`` below ``limit``, then ``limit`` itself."""
    sizes = []
    s = base
    while s < limit:
        sizes.append(s)
        s *= base
    sizes.append(limit)
    return sizes


def _pick(report: CorrelationReport, method: str) -> Optional[float]:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return report.pearson if method == PEARSON else report.spearman


def growth_reports(tokens: Iterable[str], lemma_map: Optional[LemmaMap], fam: FamiliarityList,
                   sizes: Sequence[int], log_base: float = 10,
                   missing_mode: str = RANK_BOTTOM) -> list[tuple[int, CorrelationReport]]:
    """Correlation reports of nested prefixes of ``tokens``.

    A size beyond the corpus length saturates to the full corpus; the grid
    stops at the first saturated size, so x values stay strictly increasing.
    """
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly ascending")
    it = iter(tokens)
    surfaces: Counter = Counter()
    consumed = 0
    out = []
    for size in sizes:
        chunk = list(islice(it, size - consumed))
        if out and not chunk:
            break
        surfaces.update(chunk)
        consumed += len(chunk)
        table = FrequencyTable(lemma_map.fold(surfaces) if lemma_map else surfaces)
        out.append((consumed, correlate(table, fam, log_base, missing_mode)))
        if consumed < size:
            break
    return out


def growth_curve(tokens: Iterable[str], lemma_map: Optional[LemmaMap], fam: FamiliarityList,
                 sizes: Sequence[int], log_base: float = 10, method: str = SPEARMAN,
                 missing_mode: str = RANK_BOTTOM) -> ExperimentCurve:
    reports = growth_reports(tokens, lemma_map, fam, sizes, log_base, missing_mode)
    return curve_from_reports(reports, method, label=f"growth {method}")


def curve_from_reports(reports, method: str = SPEARMAN, label: str = "") -> ExperimentCurve:
    """Curve of one coefficient; sizes where it is undefined are left out."""
    points = []
    for x, report in reports:
        value = _pick(report, method)
        if value is not None:
            points.append((float(x), value))
    return ExperimentCurve(tuple(points), label=label)


@dataclass(frozen=True)
class FixedKResult:
    label: str
    report: Optional[CorrelationReport] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {"label": self.label,
                "report": self.report.to_dict() if self.report else None,
                "error": self.error}


def sample_tokens(tokens: Iterable[str], k: int, mode: str = "prefix", seed: int = 0) -> list[str]:
    """Take ``k`` tokens: the corpus prefix, or a seeded uniform sample of positions.

    Raises ``ValueError`` if the corpus has fewer than ``k`` tokens.
    """
    if mode == "prefix":
        taken = list(islice(tokens, k))
        if len(taken) < k:
            raise ValueError(f"corpus has {len(taken)} tokens, fewer than K={k}")
        return taken
    if mode == "random":
        seq = tokens if isinstance(tokens, Sequence) else list(tokens)
        if len(seq) < k:
            raise ValueError(f"corpus has {len(seq)} tokens, fewer than K={k}")
        picks = np.sort(make_rng(seed).choice(len(seq), size=k, replace=False))
        return [seq[i] for i in picks]
    raise ValueError(f"unknown sample mode {mode!r}")


def fixed_k_compare(corpora: Sequence[Iterable[str]], fam: FamiliarityList, k: int, n: int,
                    log_base: float = 10, lemma_map: Optional[LemmaMap] = None,
                    labels: Optional[Sequence[str]] = None, sample: str = "prefix",
                    seed: int = 0, missing_mode: str = RANK_BOTTOM) -> list[FixedKResult]:
    """Correlate ``k`` tokens of each corpus with the ``n`` most familiar words.

    A corpus shorter than ``k`` yields a result carrying an error message;
    the remaining corpora are still processed.
    """
    labels = list(labels) if labels is not None else [f"corpus{i}" for i in range(len(corpora))]
    top = top_n_by_rating(fam, n)
    results = []
    for label, tokens in zip(labels, corpora):
        try:
            taken = sample_tokens(tokens, k, sample, seed)
        except ValueError as e:
            results.append(FixedKResult(label, error=str(e)))
            continue
        table = FrequencyTable(Counter(taken))
        if lemma_map:
            table = FrequencyTable(lemma_map.fold(table.counts))
        results.append(FixedKResult(label, correlate(table, top, log_base, missing_mode)))
    return results


def topn_curve(freq: FrequencyTable, fam: FamiliarityList, n_grid: Sequence[int],
               log_base: float = 10, method: str = SPEARMAN,
               missing_mode: str = RANK_BOTTOM) -> ExperimentCurve:
    """Correlation against the top-N most familiar words for each N in the grid."""
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("N grid must be strictly ascending")
    points = []
    last = 0
    for n in n_grid:
        n_eff = min(n, len(fam))
        if n_eff <= last:
            break
        last = n_eff
        value = _pick(correlate(freq, top_n_by_rating(fam, n_eff), log_base, missing_mode), method)
        if value is not None:
            points.append((float(n_eff), value))
    return ExperimentCurve(tuple(points), label=f"top-N {method}")


# --- domain diagnostics ------------------------------------------------------


@dataclass(frozen=True)
class RankDiffEntry:
    """A common word's frequency rank ``n`` and familiarity rank ``m``.

    Rank 1 is the most frequent / most familiar word; tied values share
    their average rank, so ranks may be half-integers.
    """

    word: str
    n: float
    m: float

    @property
    def diff(self) -> float:
        return self.m - self.n

    def to_tsv_row(self) -> str:
        return "\t".join([self.word, _format_number(self.n), _format_number(self.m),
                          _format_number(self.diff)])


def rank_diff(freq: FrequencyTable, fam: FamiliarityList,
              top_k: int) -> tuple[list[RankDiffEntry], list[RankDiffEntry]]:
    """Words with the largest rank disagreement between corpus and list.

    Returns ``(highest m - n, highest n - m)``. The first list holds words
    frequent in the corpus but rated unfamiliar; the second holds familiar
    words the corpus rarely uses.
    """
    common = [w for w in fam if freq.get(w, 0) > 0]
    if not common:
        raise ValueError("no words in common between corpus and familiarity list")
    n_rank = average_ranks(-np.array([freq[w] for w in common], dtype=float))
    m_rank = average_ranks(-np.array([fam[w] for w in common], dtype=float))
    entries = [RankDiffEntry(w, float(n), float(m)) for w, n, m in zip(common, n_rank, m_rank)]
    by_m_minus_n = sorted(entries, key=lambda e: (-e.diff, e.word))[:top_k]
    by_n_minus_m = sorted(entries, key=lambda e: (e.diff, e.word))[:top_k]
    return by_m_minus_n, by_n_minus_m


@dataclass(frozen=True)
class CoveredStats:
    type_pct: float
    token_pct: float
    entropy: Optional[float]

    def to_dict(self) -> dict:
        return {"type_pct": self.type_pct, "token_pct": self.token_pct, "entropy": self.entropy}


def covered_stats(freq: FrequencyTable, fam: FamiliarityList) -> CoveredStats:
    """Share of corpus types and tokens that are list words, and their entropy in bits."""
    covered = [c for w, c in freq.items() if w in fam]
    covered_tokens = sum(covered)
    type_pct = 100.0 * len(covered) / freq.total_types if freq.total_types else 0.0
    token_pct = 100.0 * covered_tokens / freq.total_tokens if freq.total_tokens else 0.0
    entropy = None
    if covered:
        entropy = -math.fsum(c / covered_tokens * math.log2(c / covered_tokens) for c in covered)
        entropy = max(entropy, 0.0)
    return CoveredStats(type_pct, token_pct, entropy)


def logfreq_histogram(freq: FrequencyTable, bins: int, log_base: float = 10,
                      lo: Optional[float] = None, hi: Optional[float] = None) -> Histogram:
    """Number of word types per log-frequency bin (default range ``[0, max log f]``)."""
    log = log_function(log_base)
    values = [log(c) for c in freq.counts.values()]
    if lo is None:
        lo = 0.0
    if hi is None:
        hi = max(values, default=1.0)
    if hi <= lo:
        hi = lo + 1.0
    return equal_width_histogram(values, bins, lo, hi)


def powerlaw_slope(freq: Union[FrequencyTable, Mapping[str, float]]) -> float:
    """Least-squares slope of log(count) against log(rank).

    Ranks run from 1 (most frequent) to the number of types; words with
    equal counts share their average rank.
    """
    counts_map = freq.counts if isinstance(freq, FrequencyTable) else freq
    counts = np.array([float(c) for c in counts_map.values()])
    if np.unique(counts).size < 3:
        raise UndefinedStatistic("power-law slope needs at least 3 distinct counts")
    ranks = average_ranks(-counts)
    x = np.log(ranks)
    y = np.log(counts)
    dx = x - x.mean()
    return float(np.dot(dx, y - y.mean()) / np.dot(dx, dx))


def top_words(freq: FrequencyTable, k: int) -> list[str]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return [w for w, _ in freq.most_common(k)]


def rare_words(freq: FrequencyTable, n_max: int = 10, k: int = 1, seed: int = 0) -> list[str]:
    """For each count value 1..n_max, ``k`` words of exactly that count chosen at random.

    Count values with no words are skipped.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    by_count: dict[int, list[str]] = {}
    for w, c in freq.items():
        if c <= n_max:
            by_count.setdefault(c, []).append(w)
    rng = make_rng(seed)
    out = []
    for c in range(1, n_max + 1):
        pool = sorted(by_count.get(c, ()))
        if not pool:
            continue
        picks = rng.choice(len(pool), size=min(k, len(pool)), replace=False)
        out.extend(pool[i] for i in picks)
    return out

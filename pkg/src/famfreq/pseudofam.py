"""Pseudo-familiarity ratings from corpus log-frequency, and a Dale-Chall-style
hard-word count built on them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from famfreq.correlation import log_function
from famfreq.errors import ValidationError
from famfreq.familiarity import RATING_MAX, RATING_MIN, FamiliarityList, load_famlist
from famfreq.ingest import FrequencyTable, LemmaMap

DEFAULT_BASIC_SIZE = 3000
ABSENT_RATING = RATING_MIN


@dataclass(frozen=True)
class Provenance:
    source: str
    log_base: float
    log_min: float
    log_max: float

    def header(self) -> list[str]:
        return [f"source={self.source}", f"log_base={self.log_base!r}",
                f"log_min={self.log_min!r}", f"log_max={self.log_max!r}"]


class PseudoFamiliarityList(FamiliarityList):
    __slots__ = ("provenance",)

    def __init__(self, entries, provenance: Provenance):
        super().__init__(entries)
        self.provenance = provenance

    def write_tsv(self, dest, header=()) -> None:
        super().write_tsv(dest, list(header) or self.provenance.header())

    save = write_tsv

    @classmethod
    def load(cls, path) -> "PseudoFamiliarityList":
        """Read a scored list; provenance comes from its ``# key=value`` header."""
        meta = {}
        with open(path, encoding="utf-8") as f:
            for line in f:
                if not line.startswith("#"):
                    break
                key, sep, value = line[1:].strip().partition("=")
                if sep:
                    meta[key] = value
        try:
            prov = Provenance(meta.get("source", os.fspath(path)), float(meta["log_base"]),
                              float(meta["log_min"]), float(meta["log_max"]))
        except (KeyError, ValueError):
            raise ValidationError("missing or malformed provenance header", path) from None
        return cls(load_famlist(path).items(), prov)


def score(freq: FrequencyTable, log_base: float = 10, source: str = "") -> PseudoFamiliarityList:
    """Map log-frequency affinely onto [1, 7]: the rarest word gets 1.0, the most frequent 7.0.

    If every count is equal the map is undefined and all words get 4.0.
    """
    if not len(freq):
        raise ValueError("cannot score an empty frequency table")
    log = log_function(log_base)
    logs = {w: log(c) for w, c in freq.items()}
    lo, hi = min(logs.values()), max(logs.values())
    span = RATING_MAX - RATING_MIN
    if hi == lo:
        mid = (RATING_MIN + RATING_MAX) / 2
        ratings = {w: mid for w in logs}
    else:
        # fraction first: (hi - lo) / (hi - lo) is exactly 1, so the top word gets exactly 7.0
        ratings = {w: min(RATING_MAX, RATING_MIN + span * ((v - lo) / (hi - lo)))
                   for w, v in logs.items()}
    return PseudoFamiliarityList(ratings, Provenance(source, float(log_base), lo, hi))


def basic_word_list(pf: FamiliarityList, size: int = DEFAULT_BASIC_SIZE) -> list[str]:
    """The ``size`` highest-rated words; equal ratings in ascending word order."""
    if size < 1:
        raise ValueError("size must be >= 1")
    return pf.ranked()[:size]


@dataclass(frozen=True)
class ReadabilityReport:
    total_tokens: int
    hard_tokens: int
    hard_fraction: float
    threshold: float

    def to_dict(self) -> dict:
        return {"total_tokens": self.total_tokens, "hard_tokens": self.hard_tokens,
                "hard_fraction": self.hard_fraction, "threshold": self.threshold}


def assess(tokens: Iterable[str], pf: FamiliarityList, lemma_map: Optional[LemmaMap] = None,
           threshold: float = 4.0) -> ReadabilityReport:
    """Count tokens whose (lemmatized) pseudo-rating falls below ``threshold``.

    Words missing from ``pf`` count as rating 1.0.
    """
    if not RATING_MIN <= threshold <= RATING_MAX:
        raise ValueError("threshold must lie in [1, 7]")
    lemma = lemma_map or LemmaMap()
    total = hard = 0
    for tok in tokens:
        total += 1
        if pf.get(lemma(tok), ABSENT_RATING) < threshold:
            hard += 1
    return ReadabilityReport(total, hard, hard / total if total else 0.0, threshold)

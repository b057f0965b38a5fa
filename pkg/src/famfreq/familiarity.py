"""Word familiarity rating lists (MRC-style and Amano-style norms)."""

from __future__ import annotations

import os
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from famfreq.errors import ValidationError

RATING_MIN = 1.0
RATING_MAX = 7.0


def _check_word(word: str) -> bool:
    return bool(word) and not any(ch.isspace() for ch in word)


class FamiliarityList:
    """Immutable mapping of word -> familiarity rating on the 1.0-7.0 scale."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, float] | Iterable[tuple[str, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[str, float] = {}
        for word, rating in items:
            if not _check_word(word):
                raise ValidationError(f"invalid word {word!r}")
            if word in clean:
                raise ValidationError(f"duplicate word {word!r}")
            rating = float(rating)
            if not RATING_MIN <= rating <= RATING_MAX:
                raise ValidationError(f"rating {rating} for {word!r} outside [1.0, 7.0]")
            clean[word] = rating
        self._entries = clean

    @property
    def entries(self) -> Mapping[str, float]:
        return MappingProxyType(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, word):
        return word in self._entries

    def __getitem__(self, word):
        return self._entries[word]

    def __iter__(self):
        return iter(self._entries)

    def get(self, word, default=None):
        return self._entries.get(word, default)

    def items(self):
        return self._entries.items()

    def words(self) -> list[str]:
        return list(self._entries)

    def ratings(self) -> np.ndarray:
        return np.fromiter(self._entries.values(), dtype=float, count=len(self._entries))

    def ranked(self) -> list[str]:
        """Words from most to least familiar; equal ratings in ascending word order."""
        return [w for w, _ in sorted(self._entries.items(), key=lambda kv: (-kv[1], kv[0]))]

    def __eq__(self, other):
        if not isinstance(other, FamiliarityList):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"{type(self).__name__}({len(self._entries)} words)"

    def write_tsv(self, dest, header: Sequence[str] = ()) -> None:
        if isinstance(dest, (str, os.PathLike)):
            with open(dest, "w", encoding="utf-8", newline="\n") as f:
                self.write_tsv(f, header)
            return
        for line in header:
            dest.write(f"# {line}\n")
        dest.writelines(f"{w}\t{r!r}\n" for w, r in self._entries.items())

    save = write_tsv


def load_famlist(path, scale_divisor: float = 1.0) -> FamiliarityList:
    """Read a ``word<TAB>rating`` file, dividing each rating by ``scale_divisor``.

    Raw MRC familiarity values run 100-700 and load with a divisor of 100.
    """
    if not scale_divisor > 0:
        raise ValueError("scale_divisor must be positive")
    entries: dict[str, float] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValidationError("expected 'word<TAB>rating'", path, lineno)
            word, raw = parts
            if not _check_word(word):
                raise ValidationError(f"invalid word {word!r}", path, lineno)
            try:
                rating = float(raw) / scale_divisor
            except ValueError:
                raise ValidationError(f"rating is not a number: {raw!r}", path, lineno) from None
            if not RATING_MIN <= rating <= RATING_MAX:
                raise ValidationError(f"rating {rating:g} outside [1.0, 7.0] after scaling", path, lineno)
            if word in entries:
                raise ValidationError(f"duplicate word {word!r}", path, lineno)
            entries[word] = rating
    return FamiliarityList(entries)


@dataclass(frozen=True)
class Histogram:
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.bin_edges) != len(self.counts) + 1:
            raise ValueError("need exactly one more edge than counts")
        if any(b <= a for a, b in zip(self.bin_edges, self.bin_edges[1:])):
            raise ValueError("bin edges must be strictly ascending")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_tsv(self) -> str:
        rows = [f"{lo!r}\t{hi!r}\t{c}" for lo, hi, c in zip(self.bin_edges, self.bin_edges[1:], self.counts)]
        return "\n".join(rows) + "\n"


# the rating histogram and the log-frequency histogram share this shape
RatingHistogram = Histogram


def equal_width_histogram(values, bins: int, lo: float, hi: float) -> Histogram:
    """Equal-width bins over ``[lo, hi]``; the last bin is closed on both sides."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(lo, hi))
    return Histogram(tuple(float(e) for e in edges), tuple(int(c) for c in counts))


def rating_histogram(fam: FamiliarityList, bins: int) -> Histogram:
    return equal_width_histogram(fam.ratings(), bins, RATING_MIN, RATING_MAX)


def top_n_by_rating(fam: FamiliarityList, n: int) -> FamiliarityList:
    """The ``n`` most familiar entries, equal ratings broken by ascending word."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ranked = fam.ranked()[:n]
    return FamiliarityList((w, fam[w]) for w in ranked)


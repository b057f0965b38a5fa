"""Streaming corpus ingest: tokenization, lemma mapping and frequency tables.

Counting is done on raw byte blocks cut at ASCII whitespace, so memory is
bounded by vocabulary size rather than corpus size. Files can be split into
contiguous byte shards and counted in worker processes; shard tables merge
into exactly the sequential result.
"""

from __future__ import annotations

import io
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from famfreq.errors import IngestError, ValidationError

UNICODE_WORD = "unicode-word"
WHITESPACE = "whitespace"
MODES = (UNICODE_WORD, WHITESPACE)

DEFAULT_CHUNK_SIZE = 1 << 22

# letters/digits with optional internal apostrophes ("don't", "o'clock")
_WORD_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")
# same language restricted to ASCII; used on pure-ASCII blocks
_ASCII_WORD_RE = re.compile(rb"[A-Za-z0-9]+(?:'[A-Za-z0-9]+)*")
_WS_BYTES = b" \t\n\r\x0b\x0c"


@dataclass(frozen=True)
class TokenizerConfig:
    mode: str = UNICODE_WORD
    fold_case: Optional[bool] = None  # None: on for unicode-word, off for whitespace

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown tokenizer mode {self.mode!r}; expected one of {MODES}")

    @property
    def folds(self) -> bool:
        if self.fold_case is None:
            return self.mode == UNICODE_WORD
        return self.fold_case


def _decode(data: bytes, path=None, base: int = 0) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestError(f"invalid UTF-8 ({e.reason})", path=path, offset=base + e.start) from None


def tokenize(text: Union[str, bytes], config: Optional[TokenizerConfig] = None) -> list[str]:
    """Split text into tokens.

    ``bytes`` input is decoded as strict UTF-8; a decoding failure raises
    :class:`IngestError` carrying the byte offset of the bad sequence.
    """
    config = config or TokenizerConfig()
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))
    if config.folds:
        text = text.lower()
    if config.mode == WHITESPACE:
        return text.split()
    return _WORD_RE.findall(text)


def _block_tokens(block: bytes, config: TokenizerConfig, path=None, base: int = 0) -> list:
    """Tokens of one whitespace-aligned block.

    Pure-ASCII blocks in unicode-word mode stay as bytes (the caller decodes
    the distinct keys once); everything else comes back as str.
    """
    if config.mode == UNICODE_WORD and block.isascii():
        if config.folds:
            block = block.lower()
        return _ASCII_WORD_RE.findall(block)
    return tokenize(_decode(block, path, base), config)


class LemmaMap:
    """Surface form -> lemma lookup with identity fallback."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Mapping[str, str]] = None):
        entries = dict(entries or {})
        for surface, lemma in entries.items():
            if not surface or not lemma:
                raise ValidationError(f"empty lemma map entry {surface!r} -> {lemma!r}")
        self._entries = entries

    def __call__(self, surface: str) -> str:
        return self._entries.get(surface, surface)

    lookup = __call__

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        return isinstance(other, LemmaMap) and self._entries == other._entries

    @property
    def entries(self) -> Mapping[str, str]:
        return MappingProxyType(self._entries)

    def fold(self, counts: Mapping[str, int]) -> Counter:
        """Re-key surface counts by lemma, summing merged forms."""
        if not self._entries:
            return Counter(counts)
        out: Counter = Counter()
        get = self._entries.get
        for surface, c in counts.items():
            out[get(surface, surface)] += c
        return out

    @classmethod
    def load(cls, path) -> "LemmaMap":
        entries: dict[str, str] = {}
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2 or not parts[0] or not parts[1]:
                    raise ValidationError("expected 'surface<TAB>lemma'", path, lineno)
                surface, lemma = parts
                if surface in entries:
                    raise ValidationError(f"duplicate surface form {surface!r}", path, lineno)
                entries[surface] = lemma
        return cls(entries)


class FrequencyTable:
    """Immutable word -> count table with token and type totals."""

    __slots__ = ("_counts", "_total")

    def __init__(self, counts: Optional[Mapping[str, int]] = None):
        clean: dict[str, int] = {}
        total = 0
        for word, c in (counts or {}).items():
            if isinstance(c, bool) or int(c) != c:
                raise ValidationError(f"count for {word!r} is not an integer: {c!r}")
            c = int(c)
            if c < 0:
                raise ValidationError(f"negative count for {word!r}: {c}")
            if c == 0:
                continue
            if not word:
                raise ValidationError("empty word in frequency table")
            clean[word] = c
            total += c
        self._counts = clean
        self._total = total

    @property
    def counts(self) -> Mapping[str, int]:
        return MappingProxyType(self._counts)

    @property
    def total_tokens(self) -> int:
        return self._total

    @property
    def total_types(self) -> int:
        return len(self._counts)

    def get(self, word: str, default: int = 0) -> int:
        return self._counts.get(word, default)

    def __getitem__(self, word: str) -> int:
        return self._counts.get(word, 0)

    def __contains__(self, word) -> bool:
        return word in self._counts

    def __len__(self):
        return len(self._counts)

    def __iter__(self):
        return iter(self._counts)

    def items(self):
        return self._counts.items()

    def __eq__(self, other):
        if not isinstance(other, FrequencyTable):
            return NotImplemented
        return self._counts == other._counts

    def __repr__(self):
        return f"FrequencyTable(total_tokens={self._total}, total_types={len(self._counts)})"

    def most_common(self, k: Optional[int] = None) -> list[tuple[str, int]]:
        """Entries by descending count, ties by ascending word."""
        ordered = sorted(self._counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return ordered if k is None else ordered[:k]

    def write_tsv(self, dest) -> None:
        """Write the canonical TSV serialization to a path or text file object."""
        if isinstance(dest, (str, os.PathLike)):
            with open(dest, "w", encoding="utf-8", newline="\n") as f:
                self.write_tsv(f)
            return
        dest.write(f"# total_tokens={self._total}\n")
        dest.write(f"# total_types={len(self._counts)}\n")
        dest.writelines(f"{w}\t{c}\n" for w, c in self.most_common())

    def to_tsv(self) -> str:
        buf = io.StringIO()
        self.write_tsv(buf)
        return buf.getvalue()

    @classmethod
    def read_tsv(cls, path) -> "FrequencyTable":
        counts: dict[str, int] = {}
        declared: dict[str, tuple[int, int]] = {}
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, value = line[1:].strip().partition("=")
                    if key in ("total_tokens", "total_types"):
                        try:
                            declared[key] = (int(value), lineno)
                        except ValueError:
                            raise ValidationError(f"bad header value {value!r}", path, lineno) from None
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise ValidationError("expected 'word<TAB>count'", path, lineno)
                word, raw = parts
                if not word or any(ch.isspace() for ch in word):
                    raise ValidationError(f"invalid word {word!r}", path, lineno)
                try:
                    c = int(raw)
                except ValueError:
                    raise ValidationError(f"count is not an integer: {raw!r}", path, lineno) from None
                if c < 1:
                    raise ValidationError(f"count must be >= 1, got {c}", path, lineno)
                if word in counts:
                    raise ValidationError(f"duplicate word {word!r}", path, lineno)
                counts[word] = c
        table = cls(counts)
        actual = {"total_tokens": table.total_tokens, "total_types": table.total_types}
        for key, (value, lineno) in declared.items():
            if value != actual[key]:
                raise ValidationError(f"header {key}={value} but entries give {actual[key]}", path, lineno)
        return table


def count_corpus(tokens: Iterable[str], lemma_map: Optional[LemmaMap] = None) -> FrequencyTable:
    counts = Counter(tokens)
    if lemma_map:
        counts = lemma_map.fold(counts)
    return FrequencyTable(counts)


def merge_tables(a: FrequencyTable, b: FrequencyTable) -> FrequencyTable:
    merged = Counter(a.counts)
    merged.update(b.counts)
    return FrequencyTable(merged)


def prefix_table(tokens: Iterable[str], lemma_map: Optional[LemmaMap], n: int) -> FrequencyTable:
    """Table of the first ``n`` tokens (all of them if the sequence is shorter)."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    return count_corpus(islice(tokens, n), lemma_map)


# --- file streaming -------------------------------------------------------


def _iter_blocks(path, start: int = 0, end: Optional[int] = None,
                 chunk_size: int = DEFAULT_CHUNK_SIZE) -> Iterator[tuple[int, bytes]]:
    """Yield ``(offset, block)`` pieces of ``path[start:end]`` cut after ASCII whitespace."""
    with open(path, "rb") as f:
        f.seek(start)
        pos = start
        carry = b""
        carry_at = start
        while end is None or pos < end:
            want = chunk_size if end is None else min(chunk_size, end - pos)
            data = f.read(want)
            if not data:
                break
            pos += len(data)
            buf = carry + data
            cut = max(buf.rfind(ws) for ws in _WS_BYTES)
            if cut < 0:
                carry = buf
                continue
            yield carry_at, buf[: cut + 1]
            carry = buf[cut + 1:]
            carry_at = pos - len(carry)
        if carry:
            yield carry_at, carry


def count_file_surfaces(path, config: Optional[TokenizerConfig] = None, start: int = 0,
                        end: Optional[int] = None, chunk_size: int = DEFAULT_CHUNK_SIZE) -> Counter:
    """Surface-form counts for the byte range ``[start, end)`` of a UTF-8 file."""
    config = config or TokenizerConfig()
    counts: Counter = Counter()
    raw: Counter = Counter()
    for offset, block in _iter_blocks(path, start, end, chunk_size):
        toks = _block_tokens(block, config, path, offset)
        if toks and isinstance(toks[0], bytes):
            raw.update(toks)
        else:
            counts.update(toks)
    for tok, c in raw.items():
        counts[tok.decode("ascii")] += c
    return counts


def iter_file_tokens(path, config: Optional[TokenizerConfig] = None,
                     chunk_size: int = DEFAULT_CHUNK_SIZE) -> Iterator[str]:
    """Stream the tokens of a UTF-8 file in order."""
    config = config or TokenizerConfig()
    for offset, block in _iter_blocks(path, 0, None, chunk_size):
        yield from tokenize(_decode(block, path, offset), config)


def iter_corpus_tokens(paths: Sequence, config: Optional[TokenizerConfig] = None) -> Iterator[str]:
    """Tokens of several files, in argument order."""
    for path in paths:
        yield from iter_file_tokens(path, config)


def shard_ranges(path, shards: int) -> list[tuple[int, int]]:
    """Split a file into at most ``shards`` contiguous byte ranges ending on whitespace."""
    size = os.path.getsize(path)
    if shards <= 1 or size == 0:
        return [(0, size)]
    bounds = [0]
    with open(path, "rb") as f:
        for k in range(1, shards):
            pos = max(k * size // shards, bounds[-1])
            f.seek(pos)
            while True:
                data = f.read(65536)
                if not data:
                    pos = size
                    break
                hits = [i for i in (data.find(ws) for ws in _WS_BYTES) if i >= 0]
                if hits:
                    pos += min(hits)
                    break
                pos += len(data)
            if pos > bounds[-1]:
                bounds.append(pos)
    if bounds[-1] < size:
        bounds.append(size)
    return list(zip(bounds[:-1], bounds[1:]))


def _count_job(job):
    path, start, end, config = job
    return count_file_surfaces(path, config, start, end)


def count_files(paths: Sequence, config: Optional[TokenizerConfig] = None,
                lemma_map: Optional[LemmaMap] = None, shards: int = 1) -> FrequencyTable:
    """Count one or more corpus files, optionally with shard-parallel workers.

    The result is independent of ``shards``: every shard is a contiguous
    whitespace-aligned byte range and the per-shard counts are summed.
    """
    config = config or TokenizerConfig()
    jobs = []
    for path in paths:
        for start, end in shard_ranges(path, shards):
            jobs.append((path, start, end, config))
    total: Counter = Counter()
    if shards > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(shards, len(jobs))) as pool:
            for part in pool.map(_count_job, jobs):
                total.update(part)
    else:
        for job in jobs:
            total.update(_count_job(job))
    if lemma_map:
        total = lemma_map.fold(total)
    return FrequencyTable(total)

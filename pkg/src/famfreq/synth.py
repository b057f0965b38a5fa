"""Synthetic Zipfian corpora and familiarity lists with known ground truth.

All randomness comes from numpy's PCG64 bit generator seeded with the given
integer, so outputs are reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from famfreq.familiarity import RATING_MAX, RATING_MIN, FamiliarityList


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ZipfSpec:
    vocab_size: int
    exponent: float = 1.0
    token_count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be >= 1")
        if not self.exponent > 0:
            raise ValueError("exponent must be positive")
        if self.token_count < 0:
            raise ValueError("token_count must be >= 0")

    @property
    def label_width(self) -> int:
        return max(6, len(str(self.vocab_size)))

    def label(self, rank: int) -> str:
        """Word label for a 1-based rank: ``w000001`` is the most probable word."""
        return f"w{rank:0{self.label_width}d}"

    def labels(self) -> list[str]:
        return [self.label(r) for r in range(1, self.vocab_size + 1)]


def zipf_probabilities(vocab_size: int, exponent: float) -> np.ndarray:
    weights = np.arange(1, vocab_size + 1, dtype=float) ** -exponent
    return weights / weights.sum()


def generate_ranks(spec: ZipfSpec) -> np.ndarray:
    """0-based ranks of ``spec.token_count`` i.i.d. Zipf draws (inverse-CDF sampling)."""
    if spec.token_count == 0:
        return np.empty(0, dtype=np.int64)
    cdf = np.cumsum(zipf_probabilities(spec.vocab_size, spec.exponent))
    u = make_rng(spec.seed).random(spec.token_count)
    idx = np.searchsorted(cdf, u, side="right")
    # cdf[-1] can round below 1.0
    return np.minimum(idx, spec.vocab_size - 1)


def generate_corpus(spec: ZipfSpec) -> list[str]:
    labels = spec.labels()
    return [labels[i] for i in generate_ranks(spec)]


def write_corpus(tokens, path, per_line: int = 20) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for i in range(0, len(tokens), per_line):
            f.write(" ".join(tokens[i:i + per_line]))
            f.write("\n")


def true_ratings(spec: ZipfSpec) -> np.ndarray:
    """Noise-free ratings: log-probability mapped affinely onto [1, 7]."""
    if spec.vocab_size == 1:
        raise ValueError("rating normalization is undefined for a one-word vocabulary")
    logp = np.log(zipf_probabilities(spec.vocab_size, spec.exponent))
    span = logp[0] - logp[-1]
    return RATING_MIN + (RATING_MAX - RATING_MIN) * ((logp - logp[-1]) / span)


def generate_famlist(spec: ZipfSpec, noise_sd: float = 0.0, fam_seed: int = 0) -> FamiliarityList:
    if noise_sd < 0:
        raise ValueError("noise_sd must be nonnegative")
    ratings = true_ratings(spec)
    if noise_sd > 0:
        ratings = ratings + noise_sd * make_rng(fam_seed).standard_normal(spec.vocab_size)
    ratings = np.clip(ratings, RATING_MIN, RATING_MAX)
    return FamiliarityList(zip(spec.labels(), ratings.tolist()))

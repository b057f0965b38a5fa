import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from famfreq.errors import ValidationError
from famfreq.familiarity import FamiliarityList
from famfreq.ingest import FrequencyTable, LemmaMap, count_corpus
from famfreq.pseudofam import (
    DEFAULT_BASIC_SIZE,
    PseudoFamiliarityList,
    assess,
    basic_word_list,
    score,
)
from famfreq.synth import ZipfSpec, generate_corpus, generate_famlist

count_tables = st.dictionaries(st.text("abcdefgh", min_size=1, max_size=3), st.integers(1, 10_000),
                               min_size=1).map(FrequencyTable)


def test_score_examples():
    pf = score(FrequencyTable({"a": 1, "b": 10, "c": 100}))
    assert (pf["a"], pf["b"], pf["c"]) == (1.0, 4.0, 7.0)
    assert pf.provenance.log_min == 0.0 and pf.provenance.log_max == 2.0


def test_score_degenerate_and_empty():
    pf = score(FrequencyTable({"a": 3, "b": 3}))
    assert set(r for _, r in pf.items()) == {4.0}
    with pytest.raises(ValueError):
        score(FrequencyTable())


@given(count_tables, st.sampled_from([2, 2.718281828459045, 10]))
def test_score_invariants(freq, base):
    pf = score(freq, base)
    ratings = [pf[w] for w in freq.counts]
    assert all(1.0 <= r <= 7.0 for r in ratings)
    if len(set(freq.counts.values())) > 1:
        top = max(freq.counts, key=freq.counts.get)
        bottom = min(freq.counts, key=freq.counts.get)
        assert pf[top] == 7.0 and pf[bottom] == 1.0
    by_count = sorted(freq.counts, key=freq.counts.get)
    assert all(pf[a] <= pf[b] for a, b in zip(by_count, by_count[1:]))


def test_score_spearman_with_frequency_is_one():
    freq = count_corpus(generate_corpus(ZipfSpec(800, 1.0, 50_000, 4)))
    pf = score(freq)
    words = list(freq.counts)
    assert stats.spearmanr([pf[w] for w in words], [freq[w] for w in words]).statistic == pytest.approx(1.0, abs=1e-12)


def test_score_matches_noise_free_synthetic_ratings():
    # small vocabulary, many tokens: neighbouring ranks are many standard errors apart
    spec = ZipfSpec(20, 1.0, 1_000_000, 8)
    freq = count_corpus(generate_corpus(spec))
    pf = score(freq)
    fam = generate_famlist(spec)
    words = spec.labels()
    assert stats.spearmanr([pf[w] for w in words], [fam[w] for w in words]).statistic == pytest.approx(1.0, abs=1e-12)


def test_basic_word_list():
    pf = score(FrequencyTable({"a": 5, "b": 5, "c": 1, "d": 9}))
    assert basic_word_list(pf, 2) == ["d", "a"]
    assert basic_word_list(pf, 100) == ["d", "a", "b", "c"]
    assert DEFAULT_BASIC_SIZE == 3000
    with pytest.raises(ValueError):
        basic_word_list(pf, 0)


@given(count_tables, st.integers(1, 40))
def test_basic_word_list_nested(freq, k):
    pf = score(freq)
    assert basic_word_list(pf, k + 1)[:k] == basic_word_list(pf, k)


def test_assess_examples():
    pf = score(FrequencyTable({"the": 100, "cat": 10, "ox": 1}))
    assert assess(["the"] * 8, pf, threshold=7.0).hard_fraction == 0.0
    empty = assess([], pf)
    assert (empty.total_tokens, empty.hard_fraction) == (0, 0.0)
    text = ["the"] * 7 + ["ox", "zebra", "cat"]
    r = assess(text, pf, threshold=5.0)
    assert (r.total_tokens, r.hard_tokens, r.hard_fraction) == (10, 3, 0.3)
    lemma = LemmaMap({"cats": "cat"})
    assert assess(["cats"], pf, lemma, threshold=4.0).hard_tokens == 0
    assert assess(["cats"], pf, threshold=4.0).hard_tokens == 1
    with pytest.raises(ValueError):
        assess(text, pf, threshold=0.5)


@given(count_tables, st.lists(st.text("abcdefghij", min_size=1, max_size=3), max_size=50),
       st.floats(1, 7), st.floats(1, 7))
def test_assess_monotone_in_threshold(freq, text, t1, t2):
    pf = score(freq)
    lo, hi = sorted((t1, t2))
    a, b = assess(text, pf, threshold=lo), assess(text, pf, threshold=hi)
    assert a.hard_fraction <= b.hard_fraction
    assert a.hard_fraction == (a.hard_tokens / a.total_tokens if a.total_tokens else 0.0)


def test_provenance_round_trip(tmp_path):
    pf = score(FrequencyTable({"a": 1, "b": 10, "c": 100}), 2, source="corpus.tsv")
    p = tmp_path / "pf.tsv"
    pf.write_tsv(p)
    assert p.read_text().startswith("# source=corpus.tsv\n")
    back = PseudoFamiliarityList.load(p)
    assert back.provenance == pf.provenance
    assert FamiliarityList(back.items()) == FamiliarityList(pf.items())
    p.write_text("a\t3.0\n")
    with pytest.raises(ValidationError):
        PseudoFamiliarityList.load(p)

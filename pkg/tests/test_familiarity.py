import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from famfreq.errors import ValidationError
from famfreq.familiarity import FamiliarityList, load_famlist, rating_histogram, top_n_by_rating

ratings = st.floats(1.0, 7.0, allow_nan=False)
famlists = st.dictionaries(st.text("abcdefghij", min_size=1, max_size=4), ratings, min_size=1).map(FamiliarityList)


def test_load_scaled_mrc_line(tmp_path):
    p = tmp_path / "mrc.tsv"
    p.write_text("# raw MRC values\nbreakfast\t626\nencounter\t450\n")
    fam = load_famlist(p, 100.0)
    assert fam["breakfast"] == pytest.approx(6.26, abs=1e-12)
    assert len(fam) == 2


@pytest.mark.parametrize("body, line", [
    ("ok\t3.0\nx\t8.0\n", 2),
    ("x\t0.5\n", 1),
    ("a\t2\na\t3\n", 2),
    ("a b\t2\n", 1),
    ("a\tnope\n", 1),
    ("a\t2\t3\n", 1),
])
def test_load_validation_names_line(tmp_path, body, line):
    p = tmp_path / "fam.tsv"
    p.write_text(body)
    with pytest.raises(ValidationError) as e:
        load_famlist(p, 1.0)
    assert e.value.line == line
    assert f"fam.tsv:{line}:" in str(e.value)


def test_mrc_sized_export_loads_all_entries(tmp_path):
    # the MRC familiarity export covers 4894 words
    rng = np.random.default_rng(0)
    p = tmp_path / "mrc.tsv"
    p.write_text("".join(f"w{i}\t{int(v)}\n" for i, v in enumerate(rng.integers(100, 701, 4894))))
    assert len(load_famlist(p, 100.0)) == 4894


@given(famlists)
def test_round_trip(tmp_path_factory, fam):
    p = tmp_path_factory.mktemp("rt") / "fam.tsv"
    fam.save(p)
    assert load_famlist(p) == fam


def test_histogram_examples():
    fam = FamiliarityList({"a": 1.0, "b": 7.0})
    assert rating_histogram(fam, 6).counts == (1, 0, 0, 0, 0, 1)
    assert rating_histogram(fam, 1).counts == (2,)
    assert rating_histogram(fam, 6).bin_edges == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0)


@given(famlists, st.integers(1, 40))
def test_histogram_conserves(fam, bins):
    h = rating_histogram(fam, bins)
    assert sum(h.counts) == len(fam)
    assert len(h.counts) == bins


def test_histogram_reproduces_known_distribution():
    # ratings uniform on [1, 7): each of 6 unit bins has mass 1/6
    rng = np.random.default_rng(42)
    n = 20_000
    fam = FamiliarityList((f"w{i}", r) for i, r in enumerate(rng.uniform(1.0, 7.0, n)))
    counts = np.array(rating_histogram(fam, 6).counts)
    p = 1 / 6
    se = np.sqrt(n * p * (1 - p))
    assert np.all(np.abs(counts - n * p) < 4 * se)


def test_top_n():
    fam = FamiliarityList({"a": 3.0, "b": 5.0, "c": 4.0})
    assert list(top_n_by_rating(fam, 2)) == ["b", "c"]
    assert top_n_by_rating(fam, 3) == fam
    assert top_n_by_rating(fam, 10) == fam
    assert list(top_n_by_rating(FamiliarityList({"b": 5.0, "a": 5.0}), 1)) == ["a"]
    with pytest.raises(ValueError):
        top_n_by_rating(fam, 0)


@given(famlists, st.integers(1, 30))
def test_top_n_monotone(fam, n):
    small = top_n_by_rating(fam, n)
    big = top_n_by_rating(fam, n + 1)
    assert set(small) <= set(big)
    extra = set(big) - set(small)
    for w in extra:
        assert min(small.entries.values()) >= big[w]


def test_constructor_validation():
    with pytest.raises(ValidationError):
        FamiliarityList({"a": 7.5})
    with pytest.raises(ValidationError):
        FamiliarityList([("a", 2.0), ("a", 3.0)])
    with pytest.raises(ValidationError):
        FamiliarityList({"": 2.0})

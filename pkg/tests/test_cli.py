import json
import subprocess
import sys

import pytest
from scipy import stats

from famfreq.cli import main
from famfreq.familiarity import load_famlist
from famfreq.ingest import FrequencyTable


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pipeline(tmp_path, capsys):
    corpus, freq, fam = tmp_path / "c.txt", tmp_path / "f.tsv", tmp_path / "fam.tsv"
    assert run(["zipf-gen", "--vocab", 1000, "--tokens", 100_000, "--seed", 3, "-o", corpus], capsys)[0] == 0
    assert run(["count", corpus, "-o", freq], capsys)[0] == 0
    assert run(["fam-gen", "--vocab", 1000, "-o", fam], capsys)[0] == 0
    return corpus, freq, fam


def test_correlate_pipeline_matches_oracle(pipeline, capsys):
    _, freq, fam = pipeline
    code, out, _ = run(["correlate", "--freq", freq, "--fam", fam, "--missing", "rank-bottom"], capsys)
    assert code == 0
    report = json.loads(out)
    assert list(report) == ["covered", "coverage_pct", "pearson", "spearman"]
    table, famlist = FrequencyTable.read_tsv(freq), load_famlist(fam)
    words = famlist.words()
    expected = stats.spearmanr([table.get(w, 0) for w in words], [famlist[w] for w in words]).statistic
    assert report["spearman"] == pytest.approx(expected, abs=1e-12)
    assert report["spearman"] > 0.9


def test_growth_saturates(tmp_path, capsys):
    corpus, fam = tmp_path / "c.txt", tmp_path / "fam.tsv"
    run(["zipf-gen", "--vocab", 100, "--tokens", 500, "--seed", 1, "-o", corpus], capsys)
    run(["fam-gen", "--vocab", 100, "--noise", 0.3, "-o", fam], capsys)
    code, out, _ = run(["exp", "growth", corpus, "--fam", fam, "--sizes", "10,100,1000"], capsys)
    assert code == 0
    xs = [line.split("\t")[0] for line in out.splitlines() if not line.startswith("#")]
    assert xs == ["10", "100", "500"]


def test_every_subcommand_runs(pipeline, tmp_path, capsys):
    corpus, freq, fam = pipeline
    pf = tmp_path / "pf.tsv"
    commands = [
        ["coverage", "--freq", freq, "--fam", fam],
        ["xcorr", "--freq-a", freq, "--freq-b", freq, "--fam", fam],
        ["rankdiff", "--freq", freq, "--fam", fam, "--top-k", 3],
        ["stats", "--freq", freq, "--fam", fam],
        ["hist", "--freq", freq, "--bins", 5],
        ["hist", "--fam", fam, "--bins", 6],
        ["slope", "--freq", freq],
        ["top", "--freq", freq, "-k", 3],
        ["top", "--freq", freq, "--rare", 5, "--seed", 2],
        ["exp", "reversal", "--fam", fam, "--swaps", 20],
        ["exp", "reversal", "--fam", fam, "--target", 0.9999999],
        ["exp", "topn", "--freq", freq, "--fam", fam, "--grid", "10,100,1000"],
        ["exp", "fixedk", corpus, corpus, "--fam", fam, "-K", 1000, "-N", 100],
        ["score", "--freq", freq, "-o", pf],
        ["basic-list", "--pf", pf, "--size", 5],
        ["readability", corpus, "--pf", pf, "--threshold", 3.5],
    ]
    for argv in commands:
        code, out, err = run(argv, capsys)
        assert code == 0, (argv, err)
    assert run(["top", "--freq", freq, "-k", 3], capsys)[1] == "w000001\nw000002\nw000003\n"
    assert json.loads(run(["slope", "--freq", freq], capsys)[1])["slope"] < 0
    assert json.loads(run(["exp", "reversal", "--fam", fam, "--target", 0.9999999], capsys)[1])["reached"]
    assert len(run(["basic-list", "--pf", pf, "--size", 5], capsys)[1].split()) == 5


def test_deterministic_outputs(pipeline, tmp_path, capsys):
    corpus, freq, fam = pipeline
    again = tmp_path / "f2.tsv"
    run(["count", corpus, "--shards", 3, "-o", again], capsys)
    assert again.read_bytes() == freq.read_bytes()
    argv = ["exp", "reversal", "--fam", fam, "--swaps", 50, "--seed", 5]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]
    c2 = tmp_path / "c2.txt"
    run(["zipf-gen", "--vocab", 1000, "--tokens", 100_000, "--seed", 3, "-o", c2], capsys)
    assert c2.read_bytes() == corpus.read_bytes()


def test_validation_error_names_file_and_line(tmp_path, capsys):
    fam = tmp_path / "fam.tsv"
    fam.write_text("a\t3.0\nb\t9.5\n")
    freq = tmp_path / "f.tsv"
    FrequencyTable({"a": 2}).write_tsv(freq)
    code, _, err = run(["correlate", "--freq", freq, "--fam", fam], capsys)
    assert code == 1
    assert f"{fam}:2" in err


def test_missing_file_is_data_error(tmp_path, capsys):
    code, _, err = run(["slope", "--freq", tmp_path / "nope.tsv"], capsys)
    assert code == 1 and "famfreq: error" in err


def test_usage_errors_exit_2(capsys):
    for argv in (["frobnicate"], ["correlate", "--freq"], ["count", "x", "--bogus"], ["exp"]):
        with pytest.raises(SystemExit) as e:
            main(argv)
        assert e.value.code == 2
    capsys.readouterr()


def test_undefined_correlation_is_null(tmp_path, capsys):
    fam, freq = tmp_path / "fam.tsv", tmp_path / "f.tsv"
    fam.write_text("a\t5.0\nb\t2.0\n")
    FrequencyTable({"a": 4}).write_tsv(freq)
    code, out, _ = run(["correlate", "--freq", freq, "--fam", fam], capsys)
    assert code == 0 and json.loads(out)["pearson"] is None
    FrequencyTable({"a": 4, "b": 4, "c": 4}).write_tsv(freq)
    code, out, _ = run(["slope", "--freq", freq], capsys)
    assert code == 0 and json.loads(out) == {"slope": None}


def test_mrc_scale_option(tmp_path, capsys):
    fam, freq = tmp_path / "fam.tsv", tmp_path / "f.tsv"
    fam.write_text("a\t600\nb\t200\n")
    FrequencyTable({"a": 9, "b": 1}).write_tsv(freq)
    assert run(["correlate", "--freq", freq, "--fam", fam], capsys)[0] == 1
    code, out, _ = run(["correlate", "--freq", freq, "--fam", fam, "--fam-scale", 100], capsys)
    assert code == 0 and json.loads(out)["pearson"] == 1.0


def test_console_script_help():
    out = subprocess.run([sys.executable, "-m", "famfreq.cli", "exp", "growth", "--help"],
                         capture_output=True, text=True, check=True).stdout
    assert "--sizes" in out

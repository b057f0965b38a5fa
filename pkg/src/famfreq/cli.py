"""famfreq command-line interface.

Every subcommand writes TSV or JSON to ``--output`` (default: stdout).
Exit status is 0 on success, 1 on a data/validation error and 2 on a usage
error. Undefined correlations are written as ``null``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from famfreq import experiments as ex
from famfreq import pseudofam, synth
from famfreq.correlation import MISSING_MODES, RANK_BOTTOM, correlate, coverage, cross_correlate
from famfreq.errors import FamfreqError, TargetNotReached, UndefinedStatistic
from famfreq.familiarity import load_famlist, rating_histogram
from famfreq.ingest import MODES, UNICODE_WORD, FrequencyTable, LemmaMap, TokenizerConfig, count_files, iter_corpus_tokens

EXIT_DATA_ERROR = 1


def _log_base(text: str) -> float:
    if text == "e":
        return math.e
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid log base {text!r}") from None
    if value <= 0 or value == 1:
        raise argparse.ArgumentTypeError("log base must be positive and != 1")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(b <= a for a, b in zip(values, values[1:])):
        raise argparse.ArgumentTypeError("list must be nonempty and strictly ascending")
    return values


def _sizes(text: str):
    # "exp" = powers of ten until the corpus runs out
    if text == "exp":
        return [10 ** k for k in range(1, 16)]
    return _int_list(text)


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _tok_config(args) -> TokenizerConfig:
    return TokenizerConfig(args.mode, args.fold_case)


def _lemma(args):
    return LemmaMap.load(args.lemma_map) if args.lemma_map else None


def _fam(args):
    return load_famlist(args.fam, args.fam_scale)


# --- handlers ----------------------------------------------------------------


def cmd_count(args):
    table = count_files(args.corpus, _tok_config(args), _lemma(args), shards=args.shards)
    _emit(args, table.to_tsv())


def cmd_coverage(args):
    covered, pct = coverage(FrequencyTable.read_tsv(args.freq), _fam(args))
    _emit_json(args, {"covered": covered, "coverage_pct": pct})


def cmd_correlate(args):
    report = correlate(FrequencyTable.read_tsv(args.freq), _fam(args), args.log_base, args.missing)
    _emit_json(args, report.to_dict())


def cmd_xcorr(args):
    report = cross_correlate(FrequencyTable.read_tsv(args.freq_a), FrequencyTable.read_tsv(args.freq_b),
                             _fam(args), args.log_base)
    _emit_json(args, report.to_dict())


def cmd_rankdiff(args):
    high_m, high_n = ex.rank_diff(FrequencyTable.read_tsv(args.freq), _fam(args), args.top_k)
    lines = ["# highest m-n (corpus frequent, list unfamiliar)"]
    lines += [e.to_tsv_row() for e in high_m]
    lines += ["# highest n-m (list familiar, corpus rare)"]
    lines += [e.to_tsv_row() for e in high_n]
    _emit(args, "\n".join(lines) + "\n")


def cmd_stats(args):
    stats = ex.covered_stats(FrequencyTable.read_tsv(args.freq), _fam(args))
    _emit_json(args, stats.to_dict())


def cmd_hist(args):
    if args.freq:
        hist = ex.logfreq_histogram(FrequencyTable.read_tsv(args.freq), args.bins, args.log_base)
    else:
        hist = rating_histogram(_fam(args), args.bins)
    _emit(args, hist.to_tsv())


def cmd_slope(args):
    try:
        slope = ex.powerlaw_slope(FrequencyTable.read_tsv(args.freq))
    except UndefinedStatistic:
        slope = None
    _emit_json(args, {"slope": slope})


def cmd_top(args):
    freq = FrequencyTable.read_tsv(args.freq)
    if args.rare:
        words = ex.rare_words(freq, args.rare, args.k, args.seed)
    else:
        words = ex.top_words(freq, args.k)
    _emit(args, "".join(f"{w}\n" for w in words))


def cmd_reversal(args):
    fam = _fam(args)
    if args.target is not None:
        try:
            swaps = ex.swaps_to_reach(fam, args.target, args.seed, args.cap)
            _emit_json(args, {"reached": True, "swaps": swaps})
        except TargetNotReached as e:
            _emit_json(args, {"reached": False, "cap": e.cap, "correlation": e.correlation})
        return
    _emit(args, ex.reversal_curve(fam, args.swaps, args.seed).to_tsv())


def cmd_growth(args):
    tokens = iter_corpus_tokens(args.corpus, _tok_config(args))
    reports = ex.growth_reports(tokens, _lemma(args), _fam(args), args.sizes, args.log_base, args.missing)
    if args.reports:
        with open(args.reports, "w", encoding="utf-8", newline="\n") as f:
            json.dump([{"size": x, **r.to_dict()} for x, r in reports], f, indent=2)
            f.write("\n")
    _emit(args, ex.curve_from_reports(reports, args.method, f"growth {args.method}").to_tsv())


def cmd_topn(args):
    curve = ex.topn_curve(FrequencyTable.read_tsv(args.freq), _fam(args), args.grid, args.log_base,
                          args.method, args.missing)
    _emit(args, curve.to_tsv())


def cmd_fixedk(args):
    config = _tok_config(args)
    corpora = [iter_corpus_tokens([p], config) for p in args.corpus]
    results = ex.fixed_k_compare(corpora, _fam(args), args.K, args.N, args.log_base, _lemma(args),
                                 labels=args.corpus, sample=args.sample, seed=args.seed,
                                 missing_mode=args.missing)
    _emit_json(args, [r.to_dict() for r in results])


def cmd_zipf_gen(args):
    spec = synth.ZipfSpec(args.vocab, args.exponent, args.tokens, args.seed)
    tokens = synth.generate_corpus(spec)
    if args.output and args.output != "-":
        synth.write_corpus(tokens, args.output)
    else:
        for i in range(0, len(tokens), 20):
            sys.stdout.write(" ".join(tokens[i:i + 20]) + "\n")


def cmd_fam_gen(args):
    spec = synth.ZipfSpec(args.vocab, args.exponent)
    fam = synth.generate_famlist(spec, args.noise, args.seed)
    if args.output and args.output != "-":
        fam.write_tsv(args.output)
    else:
        fam.write_tsv(sys.stdout)


def cmd_score(args):
    pf = pseudofam.score(FrequencyTable.read_tsv(args.freq), args.log_base, source=args.freq)
    if args.output and args.output != "-":
        pf.write_tsv(args.output)
    else:
        pf.write_tsv(sys.stdout)


def cmd_basic_list(args):
    words = pseudofam.basic_word_list(load_famlist(args.pf), args.size)
    _emit(args, "".join(f"{w}\n" for w in words))


def cmd_readability(args):
    tokens = iter_corpus_tokens(args.text, _tok_config(args))
    report = pseudofam.assess(tokens, load_famlist(args.pf), _lemma(args), args.threshold)
    _emit_json(args, report.to_dict())


# --- parser ------------------------------------------------------------------


def _add_output(p):
    p.add_argument("-o", "--output", help="output file (default: stdout)")


def _add_tokenizer(p):
    p.add_argument("--mode", choices=MODES, default=UNICODE_WORD, help="tokenizer mode")
    p.add_argument("--fold-case", action=argparse.BooleanOptionalAction, default=None,
                   help="lowercase tokens (default: on for unicode-word, off for whitespace)")
    p.add_argument("--lemma-map", help="TSV of surface<TAB>lemma")


def _add_fam(p, required=True):
    p.add_argument("--fam", required=required, help="familiarity list TSV (word<TAB>rating)")
    p.add_argument("--fam-scale", type=float, default=1.0,
                   help="divide ratings by this (100 for raw MRC values)")


def _add_log_base(p):
    p.add_argument("--log-base", type=_log_base, default=10.0, help="logarithm base (number or 'e')")


def _add_missing(p):
    p.add_argument("--missing", choices=MISSING_MODES, default=RANK_BOTTOM,
                   help="Spearman treatment of list words absent from the corpus")


def _add_method(p):
    p.add_argument("--method", choices=ex.METHODS, default=ex.SPEARMAN)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="famfreq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("count", help="count corpus files into a frequency table")
    p.add_argument("corpus", nargs="+", help="UTF-8 text files, read in order")
    _add_tokenizer(p)
    p.add_argument("--shards", type=int, default=1, help="parallel worker shards per file")
    _add_output(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("coverage", help="familiarity-list coverage of a frequency table")
    p.add_argument("--freq", required=True)
    _add_fam(p)
    _add_output(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("correlate", help="coverage, Pearson and Spearman as JSON")
    p.add_argument("--freq", required=True)
    _add_fam(p)
    _add_log_base(p)
    _add_missing(p)
    _add_output(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("xcorr", help="correlate two frequency tables over list words")
    p.add_argument("--freq-a", required=True)
    p.add_argument("--freq-b", required=True)
    _add_fam(p)
    _add_log_base(p)
    _add_output(p)
    p.set_defaults(func=cmd_xcorr)

    p = sub.add_parser("rankdiff", help="words with the largest frequency/familiarity rank gap")
    p.add_argument("--freq", required=True)
    _add_fam(p)
    p.add_argument("--top-k", type=int, default=10)
    _add_output(p)
    p.set_defaults(func=cmd_rankdiff)

    p = sub.add_parser("stats", help="covered type/token percentages and entropy")
    p.add_argument("--freq", required=True)
    _add_fam(p)
    _add_output(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("hist", help="log-frequency or rating histogram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--freq")
    src.add_argument("--fam")
    p.add_argument("--fam-scale", type=float, default=1.0)
    p.add_argument("--bins", type=int, default=20)
    _add_log_base(p)
    _add_output(p)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("slope", help="rank-frequency power-law slope")
    p.add_argument("--freq", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("top", help="most frequent words, or random rare words with --rare")
    p.add_argument("--freq", required=True)
    p.add_argument("-k", type=int, default=10, help="number of words (per count value with --rare)")
    p.add_argument("--rare", type=int, metavar="N_MAX", help="pick words with counts 1..N_MAX")
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_top)

    exp = sub.add_parser("exp", help="experiments").add_subparsers(dest="experiment", required=True,
                                                                   metavar="EXPERIMENT")

    p = exp.add_parser("reversal", help="adjacent-swap reversal simulation")
    _add_fam(p)
    p.add_argument("--swaps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", type=float, help="report swaps needed to reach this correlation")
    p.add_argument("--cap", type=int, default=1_000_000)
    _add_output(p)
    p.set_defaults(func=cmd_reversal)

    p = exp.add_parser("growth", help="correlation of nested corpus prefixes")
    p.add_argument("corpus", nargs="+")
    _add_fam(p)
    p.add_argument("--sizes", type=_sizes, default=_sizes("exp"),
                   help="comma-separated prefix sizes, or 'exp' for powers of ten")
    _add_tokenizer(p)
    _add_log_base(p)
    _add_missing(p)
    _add_method(p)
    p.add_argument("--reports", help="also write full per-size reports as JSON here")
    _add_output(p)
    p.set_defaults(func=cmd_growth)

    p = exp.add_parser("topn", help="correlation against the top-N familiar words")
    p.add_argument("--freq", required=True)
    _add_fam(p)
    p.add_argument("--grid", type=_int_list, required=True, help="comma-separated N values")
    _add_log_base(p)
    _add_missing(p)
    _add_method(p)
    _add_output(p)
    p.set_defaults(func=cmd_topn)

    p = exp.add_parser("fixedk", help="equal-size samples of several corpora vs the top-N list")
    p.add_argument("corpus", nargs="+", help="one file per corpus")
    _add_fam(p)
    p.add_argument("-K", type=int, required=True, help="tokens taken from each corpus")
    p.add_argument("-N", type=int, required=True, help="top-N familiar words")
    p.add_argument("--sample", choices=("prefix", "random"), default="prefix")
    p.add_argument("--seed", type=int, default=0)
    _add_tokenizer(p)
    _add_log_base(p)
    _add_missing(p)
    _add_output(p)
    p.set_defaults(func=cmd_fixedk)

    p = sub.add_parser("zipf-gen", help="generate a synthetic Zipf corpus")
    p.add_argument("--vocab", type=int, required=True)
    p.add_argument("--exponent", type=float, default=1.0)
    p.add_argument("--tokens", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_zipf_gen)

    p = sub.add_parser("fam-gen", help="generate a synthetic familiarity list for a Zipf vocabulary")
    p.add_argument("--vocab", type=int, required=True)
    p.add_argument("--exponent", type=float, default=1.0)
    p.add_argument("--noise", type=float, default=0.0, help="Gaussian rating noise SD")
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_fam_gen)

    p = sub.add_parser("score", help="pseudo-familiarity ratings from a frequency table")
    p.add_argument("--freq", required=True)
    _add_log_base(p)
    _add_output(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("basic-list", help="highest-rated words of a (pseudo-)familiarity list")
    p.add_argument("--pf", required=True)
    p.add_argument("--size", type=int, default=pseudofam.DEFAULT_BASIC_SIZE)
    _add_output(p)
    p.set_defaults(func=cmd_basic_list)

    p = sub.add_parser("readability", help="share of hard tokens in a text")
    p.add_argument("text", nargs="+")
    p.add_argument("--pf", required=True)
    p.add_argument("--threshold", type=float, default=4.0)
    _add_tokenizer(p)
    _add_output(p)
    p.set_defaults(func=cmd_readability)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (FamfreqError, OSError, ValueError) as e:
        print(f"famfreq: error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())

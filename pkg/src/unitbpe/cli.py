"""Command-line front end: train, encode, decode, stats, analyze, tradeoff,
and synth subcommands composing the library modules.

Exit codes are stable for scripting: 0 on success, 1 on data or validation
failures (messages name the offending line or id), 2 on usage errors.
``--input -`` reads stdin, ``--out -`` writes stdout. No subcommand draws
hidden randomness; generators require an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import asdict
from typing import IO

from . import bpe, codec, metrics, oracle, synth
from .corpus import (
    DEFAULT_BOUNDARY_LABEL,
    FORMAT_DAU,
    FORMAT_SYMBOLIC,
    FORMATS,
    BaseVocabulary,
    Corpus,
    corpus_lines,
    corpus_stats,
    load_vocabulary,
    read_corpus,
    save_vocabulary,
)
from .errors import UnitBpeError


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


@contextmanager
def _out_stream(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _write_lines(out: IO[str], lines) -> None:
    for line in lines:
        out.write(line + "\n")


def _add_io_args(p: argparse.ArgumentParser, needs_format: bool = True) -> None:
    p.add_argument("--input", required=True, help="input file, or - for stdin")
    p.add_argument("--out", default="-", help="output file, or - for stdout (default)")
    if needs_format:
        p.add_argument(
            "--format",
            choices=FORMATS,
            default=FORMAT_DAU,
            help=f"corpus layout (default {FORMAT_DAU})",
        )


def _add_vocab_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vocab", help="vocabulary sidecar file (one label per line)")
    p.add_argument(
        "--boundary",
        default=DEFAULT_BOUNDARY_LABEL,
        help=f"word-boundary label for symbolic corpora (default {DEFAULT_BOUNDARY_LABEL!r})",
    )
    p.add_argument(
        "--no-boundary",
        action="store_true",
        help="treat no label as a boundary and merge freely across words",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitbpe",
        description="Train and apply pair-merge tokenizers over discrete unit corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn a merge table from a corpus")
    _add_io_args(p)
    _add_vocab_args(p)
    p.add_argument("--target-size", type=int, required=True, help="desired merged vocabulary size")
    p.add_argument("--min-pair-count", type=int, default=2, help="stop once the best pair is rarer than this")
    p.add_argument("--threads", type=int, default=1, help="worker threads (output is identical for any count)")
    p.add_argument("--oracle", action="store_true", help="use the slow reference trainer")
    p.add_argument("--save-vocab", help="also write the (possibly inferred) vocabulary sidecar here")

    p = sub.add_parser("encode", help="tokenize a corpus with a merge table")
    _add_io_args(p)
    p.add_argument("--merges", required=True, help="merge-table file from train")
    p.add_argument("--vocab", help="vocabulary sidecar file")
    p.add_argument("--boundary", default=DEFAULT_BOUNDARY_LABEL, help="boundary label used with --vocab")
    p.add_argument("--surfaces", action="store_true", help="print unit labels joined by + instead of token ids")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="use the slow reference encoder")

    p = sub.add_parser("decode", help="restore unit sequences from token ids")
    _add_io_args(p)
    p.add_argument("--merges", required=True, help="merge-table file from train")
    p.add_argument("--vocab", help="vocabulary sidecar file")
    p.add_argument("--boundary", default=DEFAULT_BOUNDARY_LABEL, help="boundary label used with --vocab")

    p = sub.add_parser("stats", help="length and run-length statistics of a corpus")
    _add_io_args(p)
    _add_vocab_args(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="compression and balance report for a corpus under a table")
    _add_io_args(p)
    p.add_argument("--merges", required=True, help="merge-table file from train")
    p.add_argument("--vocab", help="vocabulary sidecar file")
    p.add_argument("--boundary", default=DEFAULT_BOUNDARY_LABEL, help="boundary label used with --vocab")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("tradeoff", help="whole-sequence success probability (1-eps)^n")
    p.add_argument("--eps", type=float, nargs="+", required=True, help="per-token error rate(s)")
    p.add_argument("--n", type=int, nargs="+", required=True, help="sequence length(s)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default="-")

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    kinds = p.add_subparsers(dest="kind", required=True)

    z = kinds.add_parser("zipf", help="i.i.d. Zipf-weighted unit draws")
    z.add_argument("--seed", type=int, required=True)
    z.add_argument("--vocab-size", type=int, required=True, help="content units (specials are added)")
    z.add_argument("--sequences", type=int, required=True)
    z.add_argument("--length", type=int, required=True, help="units per sequence")
    z.add_argument("--exponent", type=float, default=1.0, help="Zipf exponent (0 = uniform)")
    z.add_argument("--out", default="-")

    r = kinds.add_parser("runlength", help="repeated-unit runs with geometric lengths")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--clusters", type=int, required=True, help="content units (specials are added)")
    r.add_argument("--sequences", type=int, required=True)
    r.add_argument("--length", type=int, required=True, help="units per sequence")
    r.add_argument("--mean-run", type=float, default=1.0)
    r.add_argument("--transition-skew", type=float, default=0.0)
    r.add_argument("--out", default="-")

    return parser


def _boundary_label(args) -> str | None:
    if getattr(args, "no_boundary", False):
        return None
    return args.boundary


def _load_sidecar(args, parser: argparse.ArgumentParser) -> BaseVocabulary | None:
    if getattr(args, "vocab", None) is None:
        return None
    label = _boundary_label(args) if hasattr(args, "no_boundary") else args.boundary
    return load_vocabulary(args.vocab, boundary_label=label)


def _check_boundary_flags(args, parser: argparse.ArgumentParser) -> None:
    if getattr(args, "format", None) == FORMAT_DAU and hasattr(args, "no_boundary"):
        if args.boundary != DEFAULT_BOUNDARY_LABEL or args.no_boundary:
            parser.error("--boundary/--no-boundary apply to symbolic corpora only")


def _read_corpus_for(args, parser, vocabulary: BaseVocabulary | None) -> Corpus:
    lines = _read_lines(args.input)
    label = _boundary_label(args) if hasattr(args, "no_boundary") else getattr(args, "boundary", DEFAULT_BOUNDARY_LABEL)
    return read_corpus(lines, args.format, vocabulary, boundary_label=label, source=args.input)


def _cmd_train(args, parser) -> int:
    _check_boundary_flags(args, parser)
    vocab = _load_sidecar(args, parser)
    corpus = _read_corpus_for(args, parser, vocab)
    options = bpe.TrainOptions(
        target_size=args.target_size,
        respect_boundaries=not args.no_boundary,
        min_pair_count=args.min_pair_count,
    )
    if args.oracle:
        table = oracle.naive_train(corpus, options)
    else:
        table = bpe.train(corpus, options, threads=args.threads)
    if args.save_vocab:
        save_vocabulary(corpus.vocabulary, args.save_vocab)
    with _out_stream(args.out) as out:
        bpe.save_merge_table(table, out)
    return 0


def _load_table(args) -> bpe.MergeTable:
    vocab = None
    if args.vocab is not None:
        vocab = load_vocabulary(args.vocab, boundary_label=args.boundary)
    return bpe.load_merge_table(args.merges, vocab)


def _cmd_encode(args, parser) -> int:
    table = _load_table(args)
    lines = _read_lines(args.input)
    corpus = read_corpus(lines, args.format, table.base, boundary_label=args.boundary, source=args.input)
    if args.oracle:
        sequences = tuple(oracle.naive_encode(seq, table) for seq in corpus.sequences)
    else:
        sequences = codec.encode_corpus(corpus, table, threads=args.threads).sequences
    with _out_stream(args.out) as out:
        _write_lines(out, codec.token_lines(sequences, table, surfaces=args.surfaces))
    return 0


def _cmd_decode(args, parser) -> int:
    table = _load_table(args)
    tokens = codec.read_token_lines(_read_lines(args.input))
    decoded = Corpus(table.base, tuple(codec.decode(t, table) for t in tokens), source=args.input)
    with _out_stream(args.out) as out:
        _write_lines(out, corpus_lines(decoded, args.format))
    return 0


def _cmd_stats(args, parser) -> int:
    _check_boundary_flags(args, parser)
    vocab = _load_sidecar(args, parser)
    corpus = _read_corpus_for(args, parser, vocab)
    cs = corpus_stats(corpus)
    run_mean = metrics.corpus_run_length_mean(s.units for s in corpus.sequences)
    record = dict(asdict(cs), run_length_mean=run_mean)
    with _out_stream(args.out) as out:
        if args.json:
            out.write(json.dumps(record, indent=2) + "\n")
        else:
            _write_lines(out, (f"{k} {v}" for k, v in record.items()))
    return 0


def _cmd_analyze(args, parser) -> int:
    table = _load_table(args)
    lines = _read_lines(args.input)
    corpus = read_corpus(lines, args.format, table.base, boundary_label=args.boundary, source=args.input)
    report = metrics.analyze(corpus, table, threads=args.threads)
    with _out_stream(args.out) as out:
        out.write(report.to_json() + "\n" if args.json else report.to_text())
    return 0


def _cmd_tradeoff(args, parser) -> int:
    rows = [
        {"eps": eps, "n": n, "probability": metrics.edge_case_probability(eps, n)}
        for eps in args.eps
        for n in args.n
    ]
    with _out_stream(args.out) as out:
        if args.json:
            out.write(json.dumps(rows, indent=2) + "\n")
        else:
            _write_lines(out, (f"eps={r['eps']:g} n={r['n']} p={r['probability']:.6f}" for r in rows))
    return 0


def _cmd_synth(args, parser) -> int:
    if args.kind == "zipf":
        spec = synth.ZipfSpec(
            seed=args.seed,
            vocab_size=args.vocab_size,
            num_sequences=args.sequences,
            mean_length=args.length,
            exponent=args.exponent,
        )
        corpus = synth.gen_zipf_corpus(spec)
    else:
        spec = synth.RunLengthSpec(
            seed=args.seed,
            clusters=args.clusters,
            num_sequences=args.sequences,
            mean_length=args.length,
            mean_run=args.mean_run,
            transition_skew=args.transition_skew,
        )
        corpus = synth.gen_runlength_corpus(spec)
    with _out_stream(args.out) as out:
        _write_lines(out, corpus_lines(corpus, FORMAT_DAU))
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "stats": _cmd_stats,
    "analyze": _cmd_analyze,
    "tradeoff": _cmd_tradeoff,
    "synth": _cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except UnitBpeError as exc:
        print(f"unitbpe: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"unitbpe: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Reduction, bit increase, and net compression across vocabulary sizes.

Trains merge tables at a sweep of target sizes on one seeded corpus and
prints the three compression quantities per size; reduction should grow
monotonically with the vocabulary while bit increase discounts it.

Usage:
    python3 scripts/compression_sweep.py [--seed 711] [--multipliers 2 4 8 16]
"""

from __future__ import annotations

import argparse

from unitbpe import TrainOptions, ZipfSpec, analyze, gen_zipf_corpus, train


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=711)
    parser.add_argument("--vocab-size", type=int, default=84, help="content clusters")
    parser.add_argument("--sequences", type=int, default=1000)
    parser.add_argument("--length", type=int, default=1000)
    parser.add_argument("--exponent", type=float, default=1.1)
    parser.add_argument("--multipliers", type=int, nargs="+", default=[2, 4, 8])
    args = parser.parse_args()

    corpus = gen_zipf_corpus(
        ZipfSpec(seed=args.seed, vocab_size=args.vocab_size,
                 num_sequences=args.sequences, mean_length=args.length,
                 exponent=args.exponent)
    )
    base = len(corpus.vocabulary)
    print(f"corpus: {corpus.total_units} units, |X|={base}")
    print(f"{'|Z|':>7}  {'n_hat':>8}  {'k_hat':>8}  {'reduction':>9}  {'bit_incr':>8}  {'compression':>11}")
    for mult in args.multipliers:
        table = train(corpus, TrainOptions(target_size=mult * base))
        rep = analyze(corpus, table)
        print(
            f"{rep.token_vocab:>7}  {rep.n_hat:>8.1f}  {rep.k_hat:>8.1f}"
            f"  {rep.reduction:>9.4f}  {rep.bit_increase:>8.4f}  {rep.compression:>11.4f}"
        )


if __name__ == "__main__":
    main()

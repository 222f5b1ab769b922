"""Acceptance gate: ten end-to-end checks, one test per criterion.

Covers fixed operating points of the accuracy/length trade-off,
compression accounting identities, exact equivalence of the fast trainer
and encoder with the reference implementations, lossless inversion,
balance and reduction trends on seeded synthetic corpora, metric axioms,
boundary safety, byte-level determinism across thread counts, and encoding
throughput. Each criterion contributes one PASS line to the terminal
summary once its assertions hold; a failure shows up as the test's FAILED
line instead.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from functools import lru_cache

import pytest

from unitbpe import (
    Distribution,
    RunLengthSpec,
    TrainOptions,
    ZipfSpec,
    analyze,
    bit_increase,
    compression,
    decode,
    edit_distance,
    encode,
    encode_corpus,
    gen_runlength_corpus,
    gen_zipf_corpus,
    naive_encode,
    naive_train,
    normalized_entropy,
    save_corpus,
    train,
)
from unitbpe.cli import main as cli_main
from tests.conftest import random_corpus, random_sequence

ZIPF_SEED = 711
RUNLENGTH_SEED = 2024


@pytest.fixture(scope="module")
def zipf_corpus():
    # 10^6 units over 84 content clusters, documented seed.
    spec = ZipfSpec(seed=ZIPF_SEED, vocab_size=84, num_sequences=1000, mean_length=1000, exponent=1.1)
    return gen_zipf_corpus(spec)


def test_01_tradeoff_operating_points(capsys, acceptance_report):
    targets = [(0.00097, 872, 42.94), (0.0014, 300, 65.61)]
    measured = []
    for eps, n, expected_pct in targets:
        code = cli_main(["tradeoff", "--eps", str(eps), "--n", str(n), "--json"])
        out = capsys.readouterr().out
        assert code == 0
        pct = json.loads(out)[0]["probability"] * 100.0
        assert abs(pct - expected_pct) <= 0.15, f"{pct:.4f}% vs {expected_pct}%"
        measured.append(pct)
    acceptance_report(
        "ACCEPTANCE PASS [01] trade-off probabilities: "
        f"{measured[0]:.2f}% (target 42.94+-0.15), {measured[1]:.2f}% (target 65.61+-0.15)"
    )


def test_02_compression_identities(acceptance_report):
    c1 = compression(2.90, bit_increase(84, 2048))
    c2 = compression(3.20, bit_increase(1003, 16384))
    assert c1 == pytest.approx(1.69, abs=0.01)
    assert c2 == pytest.approx(2.27, abs=0.01)
    acceptance_report(
        "ACCEPTANCE PASS [02] compression identities: "
        f"{c1:.4f} (target 1.69+-0.01), {c2:.4f} (target 2.27+-0.01)"
    )


def test_03_fast_paths_match_reference(acceptance_report):
    started = time.perf_counter()
    rng = random.Random(30_001)
    corpora = 0
    while corpora < 220:
        corpus = random_corpus(rng, with_boundary=rng.random() < 0.5)
        options = TrainOptions(
            target_size=len(corpus.vocabulary) + rng.randint(1, 20),
            respect_boundaries=rng.random() < 0.75,
            min_pair_count=rng.choice([1, 2, 2, 3]),
        )
        fast = train(corpus, options)
        reference = naive_train(corpus, options)
        assert fast.merges == reference.merges, f"trainer divergence on corpus {corpora}"
        for _ in range(4):
            seq = random_sequence(rng, corpus.vocabulary)
            assert encode(seq, fast) == naive_encode(seq, fast)
        corpora += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    acceptance_report(
        f"ACCEPTANCE PASS [03] reference equivalence: {corpora} corpora, "
        f"trainer and encoder identical, {elapsed:.1f}s (limit 60s)"
    )


def test_04_lossless_round_trips(acceptance_report):
    rng = random.Random(40_001)
    trips = 0
    for _ in range(125):
        corpus = random_corpus(rng, with_boundary=rng.random() < 0.5)
        table = train(corpus, TrainOptions(target_size=len(corpus.vocabulary) + rng.randint(2, 16)))
        for _ in range(80):
            seq = random_sequence(rng, corpus.vocabulary)
            assert decode(encode(seq, table), table) == seq
            trips += 1
    assert trips == 10_000
    acceptance_report(f"ACCEPTANCE PASS [04] lossless round trips: {trips} sequences, zero failures")


def test_05_training_balances_distributions(zipf_corpus, acceptance_report):
    table = train(zipf_corpus, TrainOptions(target_size=256))
    rep = analyze(zipf_corpus, table)
    assert rep.balance_after > rep.balance_before

    spec = RunLengthSpec(
        seed=RUNLENGTH_SEED,
        clusters=100,
        num_sequences=1000,
        mean_length=1000,
        mean_run=4.0,
        transition_skew=1.0,
    )
    run_corpus = gen_runlength_corpus(spec)
    base = len(run_corpus.vocabulary)
    run_table = train(run_corpus, TrainOptions(target_size=4 * base))
    run_rep = analyze(run_corpus, run_table)
    assert run_rep.balance_after > run_rep.balance_before
    acceptance_report(
        "ACCEPTANCE PASS [05] balance direction: skewed-draw corpus "
        f"{rep.balance_before:.4f}->{rep.balance_after:.4f}, run-structured corpus "
        f"{run_rep.balance_before:.4f}->{run_rep.balance_after:.4f}"
    )


def test_06_reduction_grows_with_vocabulary(zipf_corpus, acceptance_report):
    base = len(zipf_corpus.vocabulary)
    reductions = []
    for multiplier in (2, 4, 8):
        table = train(zipf_corpus, TrainOptions(target_size=multiplier * base))
        encoded = encode_corpus(zipf_corpus, table)
        reductions.append(encoded.mean_units / encoded.mean_tokens)
    assert reductions[0] < reductions[1] < reductions[2]
    acceptance_report(
        "ACCEPTANCE PASS [06] reduction strictly increases: "
        + " < ".join(f"{r:.4f}" for r in reductions)
        + f" at targets {[m * base for m in (2, 4, 8)]}"
    )


def test_07_metric_properties(acceptance_report):
    # normalized entropy endpoints
    for k in (2, 5, 84, 2048):
        uniform = Distribution({i: 1 / k for i in range(k)}, k)
        assert abs(normalized_entropy(uniform) - 1.0) <= 1e-12
        point = Distribution({0: 1.0}, k)
        assert normalized_entropy(point) == 0.0

    # permutation invariance on 1,000 random distributions
    rng = random.Random(70_001)
    for _ in range(1000):
        size = rng.randint(2, 24)
        weights = [rng.random() + 1e-9 for _ in range(size)]
        total = sum(weights)
        probs = [w / total for w in weights]
        d1 = Distribution(dict(enumerate(probs)), size)
        shuffled = probs[:]
        rng.shuffle(shuffled)
        d2 = Distribution(dict(enumerate(shuffled)), size)
        assert abs(normalized_entropy(d1) - normalized_entropy(d2)) <= 1e-12

    # edit distance equals the brute-force recursion on every pair of
    # sequences of length <= 6 over a 3-symbol alphabet
    @lru_cache(maxsize=None)
    def brute(a: tuple, b: tuple) -> int:
        if not a:
            return len(b)
        if not b:
            return len(a)
        return min(
            brute(a[1:], b[1:]) + (a[0] != b[0]),
            brute(a[1:], b) + 1,
            brute(a, b[1:]) + 1,
        )

    universe = [
        tuple(p) for n in range(0, 7) for p in itertools.product(range(3), repeat=n)
    ]
    pairs = 0
    for a in universe:
        for b in universe:
            result = edit_distance(a, b)
            assert result.distance == brute(a, b)
            pairs += 1
    assert pairs == len(universe) ** 2
    acceptance_report(
        "ACCEPTANCE PASS [07] metric properties: entropy endpoints and 1000 "
        f"permutations exact, edit distance verified on {pairs} pairs"
    )


def test_08_no_token_crosses_a_boundary(acceptance_report):
    rng = random.Random(80_001)
    for trial in range(1000):
        corpus = random_corpus(
            rng, with_boundary=True, max_sequences=12, max_length=24, max_content=8
        )
        vocab = corpus.vocabulary
        b = vocab.boundary
        table = train(corpus, TrainOptions(target_size=len(vocab) + rng.randint(1, 12)))
        for tid in range(table.vocab_size):
            surface = table.token_surface(tid)
            if b in surface:
                assert surface == (b,), f"trial {trial}: token {tid} spans a boundary"
        encoded = encode_corpus(corpus, table)
        for seq, toks in zip(corpus.sequences, encoded.sequences):
            boundary_positions = [i for i, u in enumerate(seq.units) if u == b]
            restored: list[int] = []
            for t in toks.tokens:
                surface = table.token_surface(t)
                assert b not in surface or surface == (b,)
                restored.extend(surface)
            assert [i for i, u in enumerate(restored) if u == b] == boundary_positions
    acceptance_report("ACCEPTANCE PASS [08] boundary safety: 1000 corpora, no merged token spans a boundary")


def test_09_thread_count_never_changes_output(tmp_path, capsys, acceptance_report):
    corpus = gen_zipf_corpus(
        ZipfSpec(seed=90_001, vocab_size=50, num_sequences=200, mean_length=500, exponent=1.05)
    )
    corpus_path = tmp_path / "c.txt"
    save_corpus(corpus, corpus_path, "dau-int")
    outputs = []
    for threads in ("1", "8", "1"):
        out_path = tmp_path / f"m{len(outputs)}.bpe"
        code = cli_main(
            ["train", "--input", str(corpus_path), "--format", "dau-int",
             "--target-size", "150", "--threads", threads, "--out", str(out_path)]
        )
        capsys.readouterr()
        assert code == 0
        outputs.append(out_path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert len(outputs[0]) > 0
    acceptance_report(
        "ACCEPTANCE PASS [09] determinism: --threads 1 and --threads 8 produce "
        f"byte-identical merge files ({len(outputs[0])} bytes)"
    )


def test_10_encoding_throughput(acceptance_report):
    train_corpus = gen_zipf_corpus(
        ZipfSpec(seed=99, vocab_size=1000, num_sequences=2000, mean_length=1000, exponent=1.1)
    )
    table = train(train_corpus, TrainOptions(target_size=16_384))
    assert table.vocab_size == 16_384
    big = gen_zipf_corpus(
        ZipfSpec(seed=100, vocab_size=1000, num_sequences=10_000, mean_length=1000, exponent=1.1)
    )
    assert big.total_units == 10_000_000
    started = time.perf_counter()
    encoded = encode_corpus(big, table, threads=1)
    elapsed = time.perf_counter() - started
    assert encoded.total_units == 10_000_000
    assert elapsed < 60.0
    acceptance_report(
        f"ACCEPTANCE PASS [10] throughput: 10^7 units encoded with a 16384-token "
        f"table in {elapsed:.1f}s single-threaded (limit 60s)"
    )

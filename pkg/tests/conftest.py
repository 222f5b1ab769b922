"""Shared builders for randomized corpora, plus the acceptance summary hook."""

from __future__ import annotations

import random

import pytest

from unitbpe import BaseVocabulary, Corpus, UnitSequence, symbolic_vocabulary

_acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance gate's one-line-per-criterion results."""
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.line(line)


@pytest.fixture()
def acceptance_report():
    """Collector for the acceptance gate's PASS lines."""
    return _acceptance_lines.append


def random_corpus(
    rng: random.Random,
    with_boundary: bool,
    max_sequences: int = 50,
    max_length: int = 30,
    max_content: int = 9,
) -> Corpus:
    """A small corpus over a letter vocabulary, optionally with a boundary
    unit mixed into the sequences."""
    n_content = rng.randint(2, max_content)
    labels = [f"u{i}" for i in range(n_content)]
    vocab = symbolic_vocabulary(labels, boundary_label="_" if with_boundary else None)
    content = vocab.content_ids()
    sequences = []
    for _ in range(rng.randint(0, max_sequences)):
        length = rng.randint(0, max_length)
        sequences.append(UnitSequence(tuple(rng.choice(content) for _ in range(length))))
    return Corpus(vocab, tuple(sequences))


def random_sequence(rng: random.Random, vocab: BaseVocabulary, max_length: int = 30) -> UnitSequence:
    content = vocab.content_ids()
    return UnitSequence(tuple(rng.choice(content) for _ in range(rng.randint(0, max_length))))

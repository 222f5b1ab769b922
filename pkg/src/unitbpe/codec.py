"""Apply merge tables to unit sequences (encode) and invert them (decode).

Encoding applies merges in rank order: at every step the lowest-rank rule
with an occurrence is applied at its leftmost position. Because no rule
involves the boundary or a special token, those units pass through
untouched and merged tokens never span a word boundary. Decoding
concatenates token surfaces, which makes the round trip lossless by
construction.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bpe import MergeTable
from .corpus import Corpus, UnitSequence
from .errors import ContractError, ParseError, ValidationError


@dataclass(frozen=True)
class TokenSequence:
    """A unit sequence after merge application; ids live in the merged
    vocabulary, and the token count never exceeds the source unit count."""

    tokens: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _rule_index(table: MergeTable) -> tuple[dict[int, tuple[int, int]], int]:
    # Pack pairs into single ints for cheap dict keys.
    shift = max(1, (table.vocab_size - 1).bit_length())
    rules = {(m.left << shift) | m.right: (m.rank, m.result) for m in table.merges}
    return rules, shift


def _encode_ids(ids: Sequence[int], rules: dict[int, tuple[int, int]], shift: int) -> list[int]:
    n = len(ids)
    if n < 2 or not rules:
        return list(ids)
    val = list(ids)
    nxt = list(range(1, n)) + [-1]
    prv = [-1] + list(range(n - 1))
    get = rules.get
    heap = []
    for i in range(n - 1):
        r = get((val[i] << shift) | val[i + 1])
        if r is not None:
            heap.append((r[0], i))
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        rank, i = pop(heap)
        if val[i] == -1:
            continue
        j = nxt[i]
        if j == -1:
            continue
        r = get((val[i] << shift) | val[j])
        if r is None:
            continue
        if r[0] != rank:
            # The pair at i changed since this entry was queued; requeue at
            # its current rank so ordering stays exact.
            push(heap, (r[0], i))
            continue
        z = r[1]
        val[i] = z
        val[j] = -1
        q = nxt[j]
        nxt[i] = q
        if q != -1:
            prv[q] = i
            rr = get((z << shift) | val[q])
            if rr is not None:
                push(heap, (rr[0], i))
        p = prv[i]
        if p != -1:
            rl = get((val[p] << shift) | z)
            if rl is not None:
                push(heap, (rl[0], p))
    out = []
    i = 0
    while i != -1:
        out.append(val[i])
        i = nxt[i]
    return out


def encode(seq: UnitSequence, table: MergeTable) -> TokenSequence:
    """Tokenize one unit sequence with a merge table."""
    base_size = len(table.base)
    for uid in seq.units:
        if not 0 <= uid < base_size:
            raise ValidationError(f"unit id {uid} outside base vocabulary of size {base_size}")
    rules, shift = _rule_index(table)
    return TokenSequence(tuple(_encode_ids(seq.units, rules, shift)))


def decode(tokens: TokenSequence, table: MergeTable) -> UnitSequence:
    """Invert encode by concatenating token surfaces."""
    out: list[int] = []
    for t in tokens.tokens:
        out.extend(table.token_surface(t))
    return UnitSequence(tuple(out))


@dataclass(frozen=True)
class EncodedCorpus:
    """Tokenized corpus plus the mean lengths before and after merging.

    mean_units is n-hat (average source length), mean_tokens is k-hat
    (average tokenized length); both are None for an empty corpus.
    """

    sequences: tuple[TokenSequence, ...]
    total_units: int
    total_tokens: int

    @property
    def mean_units(self) -> float | None:
        return self.total_units / len(self.sequences) if self.sequences else None

    @property
    def mean_tokens(self) -> float | None:
        return self.total_tokens / len(self.sequences) if self.sequences else None


def encode_corpus(corpus: Corpus, table: MergeTable, threads: int = 1) -> EncodedCorpus:
    """Encode every sequence; parallel over sequences with ordered output."""
    if corpus.vocabulary != table.base:
        raise ValidationError("corpus vocabulary does not match the merge table's base vocabulary")
    if threads < 1:
        raise ContractError("threads must be at least 1")
    rules, shift = _rule_index(table)

    def run(seq: UnitSequence) -> tuple[int, ...]:
        return tuple(_encode_ids(seq.units, rules, shift))

    if threads == 1 or len(corpus.sequences) < 2:
        encoded = [run(s) for s in corpus.sequences]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            encoded = list(pool.map(run, corpus.sequences))
    total_units = sum(len(s) for s in corpus.sequences)
    total_tokens = sum(len(t) for t in encoded)
    return EncodedCorpus(tuple(TokenSequence(t) for t in encoded), total_units, total_tokens)


def token_lines(
    sequences: Iterable[TokenSequence], table: MergeTable | None = None, surfaces: bool = False
) -> Iterator[str]:
    """Render token sequences, one per line: ids, or `+`-joined unit labels
    per token when surfaces is set (requires the table)."""
    if surfaces and table is None:
        raise ContractError("surface rendering requires a merge table")
    for seq in sequences:
        if surfaces:
            yield " ".join(table.token_label(t) for t in seq.tokens)
        else:
            yield " ".join(str(t) for t in seq.tokens)


def read_token_lines(lines: Iterable[str]) -> list[TokenSequence]:
    """Parse whitespace-separated token ids, one sequence per line."""
    out = []
    for lineno, line in enumerate(lines, start=1):
        ids = []
        for tok in line.split():
            try:
                ids.append(int(tok, 10))
            except ValueError:
                raise ParseError(f"non-integer token {tok!r}", line=lineno) from None
        out.append(TokenSequence(tuple(ids)))
    return out

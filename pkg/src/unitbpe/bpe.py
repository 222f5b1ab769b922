"""Byte-pair-encoding vocabulary induction over unit corpora.

Training repeatedly merges the most frequent adjacent token pair into a new
token until a target vocabulary size is reached or no pair occurs at least
``min_pair_count`` times. Pairs that straddle the word-boundary unit (when
respected) or touch a special token are never merged. Ties on count break
toward the lexicographically smallest (left id, right id), which makes
training fully deterministic.

The trainer here is the fast path: a linked-list corpus representation with
incremental pair bookkeeping and a lazy max-heap. Its contract is defined by
equivalence with the reference implementation that rescans the corpus every
iteration (see the oracle module).
"""

from __future__ import annotations

import heapq
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Collection, Iterable, Sequence

from .corpus import BaseVocabulary, Corpus, dau_vocabulary
from .errors import ContractError, ParseError, ValidationError

MERGE_FILE_MAGIC = "unitbpe-v1"


@dataclass(frozen=True)
class Merge:
    """One merge rule: adjacent (left, right) becomes the token ``result``.

    Ranks are dense 0-based creation order; result ids extend the base
    vocabulary, so rule ``rank`` always produces token ``base_size + rank``.
    """

    rank: int
    left: int
    right: int
    result: int


@dataclass(frozen=True)
class TrainOptions:
    """Knobs for vocabulary induction.

    target_size is the desired |Z| (base units plus merges). When
    respect_boundaries is set and the vocabulary defines a boundary unit,
    no merge may span it. Pairs occurring fewer than min_pair_count times
    stop training early; a pair seen once cannot generalize. The tie policy
    is fixed: equal counts resolve to the smallest (left, right) id pair.
    """

    target_size: int
    respect_boundaries: bool = True
    min_pair_count: int = 2

    def __post_init__(self):
        if self.min_pair_count < 1:
            raise ContractError("min_pair_count must be at least 1")


@dataclass(frozen=True)
class MergeTable:
    """An ordered list of merges over a base vocabulary.

    ``boundary`` records the barrier actually enforced when the table was
    built (None when training was unconstrained); every rule is checked to
    keep boundary and special units out of merged tokens, so token surfaces
    never mix the boundary with other units.
    """

    base: BaseVocabulary
    merges: tuple[Merge, ...]
    boundary: int | None = None

    def __post_init__(self):
        base_size = len(self.base)
        seen_pairs = set()
        for i, m in enumerate(self.merges):
            if m.rank != i:
                raise ValidationError(f"merge rank {m.rank} at position {i}: ranks must be dense")
            if m.result != base_size + i:
                raise ValidationError(
                    f"merge {i}: result {m.result} != base size {base_size} + rank {i}"
                )
            for side in (m.left, m.right):
                if not 0 <= side < m.result:
                    raise ValidationError(f"merge {i}: token id {side} not yet defined")
                if side < base_size and self.base.is_special(side):
                    raise ValidationError(f"merge {i}: special token {side} may not be merged")
                if self.boundary is not None and side == self.boundary:
                    raise ValidationError(f"merge {i}: boundary unit {side} may not be merged")
            if (m.left, m.right) in seen_pairs:
                raise ValidationError(f"merge {i}: duplicate pair ({m.left}, {m.right})")
            seen_pairs.add((m.left, m.right))

    @property
    def base_size(self) -> int:
        return len(self.base)

    @property
    def vocab_size(self) -> int:
        """|Z| = |base| + number of merges."""
        return len(self.base) + len(self.merges)

    @cached_property
    def pair_to_merge(self) -> dict[tuple[int, int], Merge]:
        return {(m.left, m.right): m for m in self.merges}

    @cached_property
    def _expansions(self) -> tuple[tuple[int, ...], ...]:
        # Surface of merged token base_size+i, as base unit ids.
        out: list[tuple[int, ...]] = []
        base_size = len(self.base)

        def surf(tid: int) -> tuple[int, ...]:
            return (tid,) if tid < base_size else out[tid - base_size]

        for m in self.merges:
            out.append(surf(m.left) + surf(m.right))
        return tuple(out)

    def token_surface(self, token_id: int) -> tuple[int, ...]:
        """Constituent base unit ids of a token, in order."""
        if not 0 <= token_id < self.vocab_size:
            raise ValidationError(
                f"token id {token_id} outside vocabulary of size {self.vocab_size}"
            )
        if token_id < len(self.base):
            return (token_id,)
        return self._expansions[token_id - len(self.base)]

    def token_label(self, token_id: int, joiner: str = "+") -> str:
        """Human-readable token surface: unit labels joined by ``joiner``."""
        return joiner.join(self.base.surface(u) for u in self.token_surface(token_id))


def pair_counts(
    sequences: Iterable[Sequence[int]],
    boundary: int | None = None,
    special: Collection[int] = (),
) -> Counter[tuple[int, int]]:
    """Count every adjacent ordered pair across sequences.

    All adjacent positions are counted ("a a a" gives (a,a) -> 2); the
    non-overlapping semantics of replacement only show up in the recount
    after a merge is applied. Pairs touching the boundary or a special id
    are excluded. Pairs never span sequences.
    """
    blocked = set(special)
    if boundary is not None:
        blocked.add(boundary)
    counts: Counter[tuple[int, int]] = Counter()
    for seq in sequences:
        prev = None
        for cur in seq:
            if prev is not None and prev not in blocked and cur not in blocked:
                counts[(prev, cur)] += 1
            prev = cur
    return counts


def _blocked_ids(vocabulary: BaseVocabulary, respect_boundaries: bool) -> tuple[set[int], int | None]:
    blocked = set(vocabulary.special)
    boundary = vocabulary.boundary if respect_boundaries else None
    if boundary is not None:
        blocked.add(boundary)
    return blocked, boundary


def _chunked_pair_counts(
    sequences: Sequence[Sequence[int]], blocked: Collection[int], threads: int
) -> Counter[tuple[int, int]]:
    # Deterministic reduction: per-chunk counters summed in chunk order.
    if threads <= 1 or len(sequences) < 2 * threads:
        return pair_counts(sequences, special=blocked)
    step = (len(sequences) + threads - 1) // threads
    chunks = [sequences[i : i + step] for i in range(0, len(sequences), step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(lambda c: pair_counts(c, special=blocked), chunks))
    total: Counter[tuple[int, int]] = Counter()
    for part in partials:
        total.update(part)
    return total


def train(corpus: Corpus, options: TrainOptions, threads: int = 1) -> MergeTable:
    """Learn a MergeTable from a corpus (the fast trainer).

    Produces at most target_size - |base| merges, stopping early once the
    best pair occurs fewer than min_pair_count times. Output is bit
    identical for any thread count; threads only parallelize the initial
    pair scan, reduced in a fixed order.
    """
    vocab = corpus.vocabulary
    base_size = len(vocab)
    if options.target_size <= base_size:
        raise ContractError(
            f"target_size {options.target_size} must exceed base vocabulary size {base_size}"
        )
    if threads < 1:
        raise ContractError("threads must be at least 1")
    blocked, boundary = _blocked_ids(vocab, options.respect_boundaries)

    # Flattened doubly linked list over all sequences; val -1 marks dead nodes.
    val: list[int] = []
    nxt: list[int] = []
    prv: list[int] = []
    for seq in corpus.sequences:
        start = len(val)
        for k, uid in enumerate(seq.units):
            val.append(uid)
            prv.append(start + k - 1 if k else -1)
            nxt.append(start + k + 1 if k + 1 < len(seq) else -1)

    # occ maps a live pair to the set of its left-node positions.
    occ: dict[tuple[int, int], set[int]] = {}
    pos = 0
    for seq in corpus.sequences:
        for k in range(len(seq) - 1):
            a, b = val[pos + k], val[pos + k + 1]
            if a not in blocked and b not in blocked:
                occ.setdefault((a, b), set()).add(pos + k)
        pos += len(seq)
    if threads > 1:
        # Cross-check initial counts against the parallel reduction; the
        # result is identical by construction, so this is purely a scan.
        parallel = _chunked_pair_counts([s.units for s in corpus.sequences], blocked, threads)
        assert all(len(v) == parallel[k] for k, v in occ.items())

    # Lazy max-heap of (-count, left, right); stale entries are dropped or
    # refreshed on pop. Counts of existing pairs only ever decrease, and
    # merges only create pairs involving the brand-new token, so one push
    # per new key plus refresh-on-pop keeps the top exact.
    heap: list[tuple[int, int, int]] = [(-len(v), k[0], k[1]) for k, v in occ.items()]
    heapq.heapify(heap)

    merges: list[Merge] = []
    while base_size + len(merges) < options.target_size:
        best: tuple[int, int] | None = None
        while heap:
            neg, a, b = heapq.heappop(heap)
            sites = occ.get((a, b))
            actual = len(sites) if sites else 0
            if actual != -neg:
                if actual >= options.min_pair_count:
                    heapq.heappush(heap, (-actual, a, b))
                continue
            if actual >= options.min_pair_count:
                best = (a, b)
            break
        if best is None:
            break
        a, b = best
        z = base_size + len(merges)
        touched: set[tuple[int, int]] = set()
        for i in sorted(occ[(a, b)]):
            j = nxt[i]
            # Skip overlap victims: the node died or was rewritten by the
            # previous replacement in this same left-to-right pass.
            if val[i] != a or j == -1 or val[j] != b:
                continue
            p, q = prv[i], nxt[j]
            if p != -1 and val[p] not in blocked:
                s = occ.get((val[p], a))
                if s is not None:
                    s.discard(p)
            if q != -1 and val[q] not in blocked:
                s = occ.get((b, val[q]))
                if s is not None:
                    s.discard(j)
            val[i] = z
            val[j] = -1
            nxt[i] = q
            nxt[j] = prv[j] = -1
            if q != -1:
                prv[q] = i
            if p != -1 and val[p] not in blocked:
                occ.setdefault((val[p], z), set()).add(p)
                touched.add((val[p], z))
            if q != -1 and val[q] not in blocked:
                occ.setdefault((z, val[q]), set()).add(i)
                touched.add((z, val[q]))
        del occ[(a, b)]
        for key in touched:
            sites = occ.get(key)
            if sites:
                heapq.heappush(heap, (-len(sites), key[0], key[1]))
        merges.append(Merge(len(merges), a, b, z))

    return MergeTable(vocab, tuple(merges), boundary=boundary)


def save_merge_table(table: MergeTable, dest) -> None:
    """Write the versioned merge-table format.

    Line 1 is the magic string, line 2 the base vocabulary size, line 3 the
    boundary label (empty when unconstrained), then one ``rank left right
    result`` row per merge.
    """
    lines = [MERGE_FILE_MAGIC, str(len(table.base))]
    if table.boundary is None:
        lines.append("")
    else:
        lines.append(table.base.surface(table.boundary))
    for m in table.merges:
        lines.append(f"{m.rank} {m.left} {m.right} {m.result}")
    text = "".join(line + "\n" for line in lines)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8", newline="\n")


def parse_merge_table(lines: Sequence[str], vocabulary: BaseVocabulary | None = None) -> MergeTable:
    """Build a MergeTable from merge-file lines, validating every invariant.

    When no vocabulary is supplied one is synthesized for boundary-free
    tables (numeric labels plus the standard specials); tables that record
    a boundary label need the real vocabulary to resolve it.
    """
    rows = [ln.rstrip("\n").rstrip("\r") for ln in lines]
    if not rows or rows[0] != MERGE_FILE_MAGIC:
        raise ParseError(f"missing magic header {MERGE_FILE_MAGIC!r}", line=1)
    if len(rows) < 3:
        raise ParseError("truncated header: need base size and boundary label lines", line=len(rows))
    try:
        base_size = int(rows[1], 10)
    except ValueError:
        raise ParseError(f"base vocabulary size must be an integer, got {rows[1]!r}", line=2) from None
    if base_size < 0:
        raise ParseError("base vocabulary size must be non-negative", line=2)
    boundary_label = rows[2].strip() or None

    if vocabulary is None:
        if boundary_label is not None:
            raise ValidationError(
                f"table records boundary label {boundary_label!r}; a vocabulary is required to resolve it"
            )
        if base_size < 3:
            raise ValidationError("base size too small for synthesized vocabulary")
        vocabulary = dau_vocabulary(base_size - 3)
    elif len(vocabulary) != base_size:
        raise ValidationError(
            f"vocabulary size {len(vocabulary)} does not match recorded base size {base_size}"
        )
    boundary = None
    if boundary_label is not None:
        boundary = vocabulary.id_of(boundary_label)

    merges = []
    for lineno, row in enumerate(rows[3:], start=4):
        if not row.strip():
            raise ParseError("blank merge row", line=lineno)
        fields = row.split()
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", line=lineno)
        try:
            rank, left, right, result = (int(f, 10) for f in fields)
        except ValueError:
            raise ParseError(f"non-integer field in merge row {row!r}", line=lineno) from None
        merges.append(Merge(rank, left, right, result))
    return MergeTable(vocabulary, tuple(merges), boundary=boundary)


def load_merge_table(path: str | Path, vocabulary: BaseVocabulary | None = None) -> MergeTable:
    """Read a merge-table file saved by save_merge_table."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_merge_table(text.splitlines(), vocabulary)

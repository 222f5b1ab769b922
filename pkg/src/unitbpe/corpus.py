"""Data model, validation, and file I/O for discrete unit corpora.

A corpus is a list of unit sequences over a closed base vocabulary. Two
on-disk layouts are supported, both one sequence per line with
whitespace-separated tokens:

* ``dau-int``: base-10 unit ids (discrete acoustic unit streams),
* ``symbolic``: free-form non-whitespace labels (phoneme streams), with a
  configurable word-boundary label (default ``_``).

Vocabularies always reserve three special ids (PAD/BOS/EOS) appended after
the content units, so a DAU inventory with K clusters has size K+3. Corpus
files carry content units only; special ids never appear in files.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable

from .errors import ContractError, ParseError, ValidationError

PAD_LABEL = "<pad>"
BOS_LABEL = "<bos>"
EOS_LABEL = "<eos>"
SPECIAL_LABELS = (PAD_LABEL, BOS_LABEL, EOS_LABEL)

DEFAULT_BOUNDARY_LABEL = "_"

FORMAT_DAU = "dau-int"
FORMAT_SYMBOLIC = "symbolic"
FORMATS = (FORMAT_DAU, FORMAT_SYMBOLIC)


@dataclass(frozen=True)
class UnitSymbol:
    """One entry of a base vocabulary: integer id plus text label."""

    id: int
    surface: str


@dataclass(frozen=True)
class BaseVocabulary:
    """Closed inventory of units, with reserved special ids and an
    optional word-boundary unit.

    ``units[i].id == i`` always holds; ``special`` ids and the boundary id
    refer into ``units``. The boundary, when set, is a content unit that
    merges must never span.
    """

    units: tuple[UnitSymbol, ...]
    special: frozenset[int]
    boundary: int | None = None

    def __post_init__(self):
        for i, unit in enumerate(self.units):
            if unit.id != i:
                raise ValidationError(f"unit id {unit.id} at position {i}: ids must be dense")
        surfaces = [u.surface for u in self.units]
        if len(set(surfaces)) != len(surfaces):
            dup = next(s for s in surfaces if surfaces.count(s) > 1)
            raise ValidationError(f"duplicate surface label {dup!r}")
        for sid in self.special:
            if not 0 <= sid < len(self.units):
                raise ValidationError(f"special id {sid} outside vocabulary")
        if self.boundary is not None:
            if not 0 <= self.boundary < len(self.units):
                raise ValidationError(f"boundary id {self.boundary} outside vocabulary")
            if self.boundary in self.special:
                raise ValidationError("boundary must not be a special token")

    def __len__(self) -> int:
        return len(self.units)

    @cached_property
    def _surface_to_id(self) -> dict[str, int]:
        return {u.surface: u.id for u in self.units}

    def surface(self, unit_id: int) -> str:
        if not 0 <= unit_id < len(self.units):
            raise ValidationError(f"unit id {unit_id} outside vocabulary of size {len(self.units)}")
        return self.units[unit_id].surface

    def id_of(self, label: str) -> int:
        try:
            return self._surface_to_id[label]
        except KeyError:
            raise ValidationError(f"unknown label {label!r}") from None

    def is_special(self, unit_id: int) -> bool:
        return unit_id in self.special

    @property
    def boundary_surface(self) -> str | None:
        return None if self.boundary is None else self.units[self.boundary].surface

    def content_ids(self) -> list[int]:
        """Ids that may appear in corpus files (everything but specials)."""
        return [u.id for u in self.units if u.id not in self.special]


def dau_vocabulary(clusters: int) -> BaseVocabulary:
    """DAU vocabulary: ids 0..clusters-1 labelled by their decimal string,
    plus PAD/BOS/EOS. Size is clusters + 3; no boundary unit."""
    if clusters < 0:
        raise ContractError("cluster count must be non-negative")
    units = [UnitSymbol(i, str(i)) for i in range(clusters)]
    for off, label in enumerate(SPECIAL_LABELS):
        units.append(UnitSymbol(clusters + off, label))
    special = frozenset(range(clusters, clusters + 3))
    return BaseVocabulary(tuple(units), special, boundary=None)


def symbolic_vocabulary(
    labels: Iterable[str], boundary_label: str | None = DEFAULT_BOUNDARY_LABEL
) -> BaseVocabulary:
    """Vocabulary from content labels in order, appending the boundary label
    (when configured and absent) and the three specials."""
    content = list(labels)
    for label in content:
        if label in SPECIAL_LABELS:
            raise ValidationError(f"label {label!r} is reserved")
    if boundary_label is not None and boundary_label not in content:
        content.append(boundary_label)
    units = [UnitSymbol(i, s) for i, s in enumerate(content)]
    base = len(content)
    for off, label in enumerate(SPECIAL_LABELS):
        units.append(UnitSymbol(base + off, label))
    special = frozenset(range(base, base + 3))
    boundary = content.index(boundary_label) if boundary_label is not None else None
    return BaseVocabulary(tuple(units), special, boundary)


def load_vocabulary(
    path: str | Path, boundary_label: str | None = DEFAULT_BOUNDARY_LABEL
) -> BaseVocabulary:
    """Read a sidecar vocabulary file: one content label per line, line
    number = unit id."""
    text = Path(path).read_text(encoding="utf-8")
    labels = []
    for i, line in enumerate(text.splitlines(), start=1):
        label = line.strip()
        if not label:
            raise ParseError("empty label", line=i)
        labels.append(label)
    return symbolic_vocabulary(labels, boundary_label)


def save_vocabulary(vocabulary: BaseVocabulary, path: str | Path) -> None:
    """Write the content labels of a vocabulary, one per line."""
    lines = [vocabulary.units[i].surface for i in vocabulary.content_ids()]
    Path(path).write_text("".join(s + "\n" for s in lines), encoding="utf-8")


@dataclass(frozen=True)
class UnitSequence:
    """One utterance: a sequence of unit ids over a base vocabulary."""

    units: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self):
        return iter(self.units)


@dataclass(frozen=True)
class Corpus:
    """Immutable bundle of validated unit sequences plus their vocabulary."""

    vocabulary: BaseVocabulary
    sequences: tuple[UnitSequence, ...]
    source: str = ""

    def __post_init__(self):
        size = len(self.vocabulary)
        for seq in self.sequences:
            ids = seq.units
            if ids and (min(ids) < 0 or max(ids) >= size):
                bad = next(i for i in ids if not 0 <= i < size)
                raise ValidationError(f"unit id {bad} outside vocabulary of size {size}")

    def __len__(self) -> int:
        return len(self.sequences)

    @property
    def total_units(self) -> int:
        return sum(len(s) for s in self.sequences)


def _parse_dau_lines(lines: list[str], vocabulary: BaseVocabulary | None):
    raw: list[tuple[int, ...]] = []
    max_id = -1
    for lineno, line in enumerate(lines, start=1):
        ids = []
        for tok in line.split():
            try:
                ids.append(int(tok, 10))
            except ValueError:
                raise ParseError(f"non-integer token {tok!r}", line=lineno) from None
        if ids and min(ids) < 0:
            bad = next(i for i in ids if i < 0)
            raise ValidationError(f"line {lineno}: negative unit id {bad}")
        if ids:
            max_id = max(max_id, max(ids))
        raw.append(tuple(ids))
    if vocabulary is None:
        vocabulary = dau_vocabulary(max_id + 1)
    else:
        size = len(vocabulary)
        for lineno, ids in enumerate(raw, start=1):
            for i in ids:
                if i >= size:
                    raise ValidationError(f"line {lineno}: unit id {i} outside vocabulary of size {size}")
                if vocabulary.is_special(i):
                    raise ValidationError(f"line {lineno}: id {i} is a reserved special token")
    return raw, vocabulary


def _parse_symbolic_lines(
    lines: list[str], vocabulary: BaseVocabulary | None, boundary_label: str | None
):
    if vocabulary is None:
        seen: dict[str, int] = {}
        label_rows = []
        for line in lines:
            row = line.split()
            for label in row:
                if label in SPECIAL_LABELS:
                    raise ValidationError(f"label {label!r} is reserved")
                if label not in seen:
                    seen[label] = len(seen)
            label_rows.append(row)
        vocabulary = symbolic_vocabulary(seen, boundary_label)
        raw = [tuple(vocabulary.id_of(label) for label in row) for row in label_rows]
        return raw, vocabulary
    raw = []
    for lineno, line in enumerate(lines, start=1):
        ids = []
        for label in line.split():
            try:
                uid = vocabulary.id_of(label)
            except ValidationError:
                raise ValidationError(f"line {lineno}: unknown label {label!r}") from None
            if vocabulary.is_special(uid):
                raise ValidationError(f"line {lineno}: label {label!r} is a reserved special token")
            ids.append(uid)
        raw.append(tuple(ids))
    return raw, vocabulary


def read_corpus(
    lines: Iterable[str],
    format: str,
    vocabulary: BaseVocabulary | None = None,
    boundary_label: str | None = DEFAULT_BOUNDARY_LABEL,
    source: str = "",
) -> Corpus:
    """Parse corpus lines (one sequence each). See load_corpus."""
    if format not in FORMATS:
        raise ContractError(f"unknown corpus format {format!r}")
    line_list = [ln.rstrip("\n").rstrip("\r") for ln in lines]
    if format == FORMAT_DAU:
        raw, vocab = _parse_dau_lines(line_list, vocabulary)
    else:
        raw, vocab = _parse_symbolic_lines(line_list, vocabulary, boundary_label)
    return Corpus(vocab, tuple(UnitSequence(ids) for ids in raw), source=source)


def load_corpus(
    path: str | Path,
    format: str,
    vocabulary: BaseVocabulary | None = None,
    boundary_label: str | None = DEFAULT_BOUNDARY_LABEL,
) -> Corpus:
    """Load and validate a corpus file.

    For ``dau-int`` without a supplied vocabulary the base vocabulary is
    {0..max_id} plus the three specials; for ``symbolic`` it is inferred in
    first-appearance order. An empty file yields an empty corpus. Malformed
    tokens raise ParseError with the line number; out-of-range or reserved
    ids raise ValidationError.
    """
    text = Path(path).read_text(encoding="utf-8")
    return read_corpus(
        text.splitlines(), format, vocabulary, boundary_label, source=str(path)
    )


def corpus_lines(corpus: Corpus, format: str) -> Iterable[str]:
    """Render corpus sequences back to file lines (without newlines)."""
    if format not in FORMATS:
        raise ContractError(f"unknown corpus format {format!r}")
    if format == FORMAT_DAU:
        for seq in corpus.sequences:
            yield " ".join(str(i) for i in seq.units)
    else:
        vocab = corpus.vocabulary
        for seq in corpus.sequences:
            yield " ".join(vocab.surface(i) for i in seq.units)


def save_corpus(corpus: Corpus, dest: str | Path | IO[str], format: str) -> None:
    """Write a corpus in the given format, one sequence per line, LF endings."""
    if hasattr(dest, "write"):
        for line in corpus_lines(corpus, format):
            dest.write(line + "\n")
    else:
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            for line in corpus_lines(corpus, format):
                fh.write(line + "\n")


def split_on_boundaries(seq: UnitSequence, vocabulary: BaseVocabulary) -> list[UnitSequence]:
    """Split a sequence at every boundary unit, dropping the boundaries.

    Empty chunks are preserved, so n boundaries always yield n+1 chunks and
    join_chunks inverts the split exactly.
    """
    if vocabulary.boundary is None:
        raise ContractError("vocabulary has no boundary unit")
    b = vocabulary.boundary
    chunks: list[UnitSequence] = []
    current: list[int] = []
    for uid in seq.units:
        if uid == b:
            chunks.append(UnitSequence(tuple(current)))
            current = []
        else:
            current.append(uid)
    chunks.append(UnitSequence(tuple(current)))
    return chunks


def join_chunks(chunks: Iterable[UnitSequence], boundary: int) -> UnitSequence:
    """Inverse of split_on_boundaries: interleave chunks with the boundary."""
    out: list[int] = []
    for i, chunk in enumerate(chunks):
        if i:
            out.append(boundary)
        out.extend(chunk.units)
    return UnitSequence(tuple(out))


@dataclass(frozen=True)
class CorpusStats:
    """Length summary of a corpus; mean/min/max are None when empty."""

    sequence_count: int
    total_units: int
    mean_length: float | None
    min_length: int | None
    max_length: int | None


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Sequence count, total units, and mean/min/max sequence length."""
    n = len(corpus.sequences)
    if n == 0:
        return CorpusStats(0, 0, None, None, None)
    lengths = [len(s) for s in corpus.sequences]
    total = sum(lengths)
    return CorpusStats(n, total, total / n, min(lengths), max(lengths))

"""Pair-merge tokenization for discrete unit corpora.

Train byte-pair-style merge vocabularies over quantized acoustic unit or
phoneme sequences, apply and invert them losslessly, and measure what the
re-tokenization does to sequence length, distribution balance, and
downstream error trade-offs.
"""

from .bpe import (
    Merge,
    MergeTable,
    TrainOptions,
    load_merge_table,
    pair_counts,
    parse_merge_table,
    save_merge_table,
    train,
)
from .codec import EncodedCorpus, TokenSequence, decode, encode, encode_corpus
from .corpus import (
    BaseVocabulary,
    Corpus,
    CorpusStats,
    UnitSequence,
    UnitSymbol,
    corpus_stats,
    dau_vocabulary,
    join_chunks,
    load_corpus,
    load_vocabulary,
    read_corpus,
    save_corpus,
    save_vocabulary,
    split_on_boundaries,
    symbolic_vocabulary,
)
from .errors import ContractError, ParseError, UnitBpeError, ValidationError
from .metrics import (
    AnalysisReport,
    Distribution,
    EditDistance,
    RunLengthStats,
    analyze,
    bit_increase,
    compression,
    corpus_run_length_mean,
    edge_case_probability,
    edit_distance,
    entropy,
    error_rate,
    normalized_entropy,
    reduction,
    run_length_stats,
    token_distribution,
)
from .oracle import naive_encode, naive_train
from .synth import RunLengthSpec, SplitMix64, ZipfSpec, gen_runlength_corpus, gen_zipf_corpus

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BaseVocabulary",
    "ContractError",
    "Corpus",
    "CorpusStats",
    "Distribution",
    "EditDistance",
    "EncodedCorpus",
    "Merge",
    "MergeTable",
    "ParseError",
    "RunLengthSpec",
    "RunLengthStats",
    "SplitMix64",
    "TokenSequence",
    "TrainOptions",
    "UnitBpeError",
    "UnitSequence",
    "UnitSymbol",
    "ValidationError",
    "ZipfSpec",
    "analyze",
    "bit_increase",
    "compression",
    "corpus_run_length_mean",
    "corpus_stats",
    "dau_vocabulary",
    "decode",
    "edge_case_probability",
    "edit_distance",
    "encode",
    "encode_corpus",
    "entropy",
    "error_rate",
    "gen_runlength_corpus",
    "gen_zipf_corpus",
    "join_chunks",
    "load_corpus",
    "load_merge_table",
    "load_vocabulary",
    "naive_encode",
    "naive_train",
    "normalized_entropy",
    "pair_counts",
    "parse_merge_table",
    "read_corpus",
    "reduction",
    "run_length_stats",
    "save_corpus",
    "save_merge_table",
    "save_vocabulary",
    "split_on_boundaries",
    "symbolic_vocabulary",
    "token_distribution",
    "train",
]

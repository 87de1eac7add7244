"""Batch plagiarism detection by word tri-gram matching, with optional
k-means pruning of the comparison space."""

__version__ = "0.1.0"

from .cluster import ClusterAssignment, TermVector, Vocabulary, build_vocabulary, kmeans, sweep_k, vectorize
from .corpus import Corpus, RawDocument, load_corpus
from .engine import (
    ClusterParams,
    DetectionConfig,
    DetectionReport,
    bench,
    detect,
    detect_clustered,
    detect_full,
    emit_report,
    generate_synthetic_corpus,
)
from .errors import CorpusError, NoPairsError, UsageError
from .preprocess import PreprocessConfig, PreprocessedDocument, preprocess
from .stemmer import porter_measure, porter_stem, stem_tokens
from .trigram import (
    SimilarityRecord,
    TrigramSet,
    build_trigrams,
    containment_pct,
    jaccard_pct,
    max_similarity,
    overlap,
)

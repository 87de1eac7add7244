"""Word n-gram sets and the pairwise similarity scores built on them."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NoPairsError, UsageError
from .preprocess import PreprocessedDocument

_MASK = (1 << 64) - 1
_MULT = 0x9E3779B97F4A7C15


@lru_cache(maxsize=1 << 18)
def token_hash(token: str) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def gram_hash(gram: Sequence[str]) -> int:
    """64-bit hash of an n-gram, order-sensitive, stable across processes."""
    h = len(gram)
    for tok in gram:
        h = ((h * _MULT) ^ token_hash(tok)) & _MASK
    return h


@dataclass(frozen=True)
class TrigramSet:
    doc_id: str
    grams: frozenset[int]
    n: int = 3

    @property
    def size(self) -> int:
        return len(self.grams)


def build_trigrams(doc: PreprocessedDocument, n: int = 3) -> TrigramSet:
    if n < 1:
        raise UsageError("n-gram size must be >= 1")
    hashes = [token_hash(t) for t in doc.tokens]
    grams = set()
    for i in range(len(hashes) - n + 1):
        h = n
        for th in hashes[i : i + n]:
            h = ((h * _MULT) ^ th) & _MASK
        grams.add(h)
    grams = frozenset(grams)
    return TrigramSet(doc_id=doc.id, grams=grams, n=n)


def _check_n(a: TrigramSet, b: TrigramSet) -> None:
    if a.n != b.n:
        raise UsageError(f"cannot compare {a.n}-grams with {b.n}-grams")


def overlap(a: TrigramSet, b: TrigramSet) -> int:
    _check_n(a, b)
    small, big = (a.grams, b.grams) if a.size <= b.size else (b.grams, a.grams)
    return len(small & big)


def containment_from_counts(common: int, size_a: int, size_b: int) -> Fraction:
    smaller = min(size_a, size_b)
    return Fraction(100 * common, smaller) if smaller else Fraction(0)


def jaccard_from_counts(common: int, size_a: int, size_b: int) -> Fraction:
    union = size_a + size_b - common
    return Fraction(100 * common, union) if union else Fraction(0)


def containment_pct(a: TrigramSet, b: TrigramSet) -> Fraction:
    """Shared grams as a percentage of the smaller set; 0 if either is empty."""
    return containment_from_counts(overlap(a, b), a.size, b.size)


def jaccard_pct(a: TrigramSet, b: TrigramSet) -> Fraction:
    return jaccard_from_counts(overlap(a, b), a.size, b.size)


@dataclass(frozen=True, order=True)
class SimilarityRecord:
    doc_a: str
    doc_b: str
    overlap: int
    containment_pct: Fraction
    jaccard_pct: Fraction

    @classmethod
    def from_counts(cls, id_a: str, id_b: str, common: int, size_a: int, size_b: int):
        if id_b < id_a:
            id_a, id_b = id_b, id_a
        return cls(
            doc_a=id_a,
            doc_b=id_b,
            overlap=common,
            containment_pct=containment_from_counts(common, size_a, size_b),
            jaccard_pct=jaccard_from_counts(common, size_a, size_b),
        )


def compare(a: TrigramSet, b: TrigramSet) -> SimilarityRecord:
    return SimilarityRecord.from_counts(a.doc_id, b.doc_id, overlap(a, b), a.size, b.size)


def max_similarity(
    doc_id: str, records: Iterable[SimilarityRecord]
) -> tuple[str, Fraction]:
    """Best-matching partner of ``doc_id`` by containment.

    Ties go to the lexicographically smallest partner id.
    """
    best = None
    for rec in records:
        if rec.doc_a == doc_id:
            partner = rec.doc_b
        elif rec.doc_b == doc_id:
            partner = rec.doc_a
        else:
            continue
        key = (-rec.containment_pct, partner)
        if best is None or key < best:
            best = key
    if best is None:
        raise NoPairsError(f"no pairs involving {doc_id}")
    return best[1], -best[0]

"""Bag-of-words vectors and k-means for pruning the comparison space."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import UsageError
from .preprocess import PreprocessedDocument

log = logging.getLogger(__name__)

# far above the rounding error of the distance expansion on unit vectors
_TIE_EPS = 1e-9


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    min_term_freq: int = 1

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def index(self, term: str) -> int | None:
        return self._index.get(term)


@dataclass(frozen=True)
class TermVector:
    doc_id: str
    weights: dict[int, int]
    dim: int

    def dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        for i, w in self.weights.items():
            out[i] = w
        return out


@dataclass
class ClusterAssignment:
    k: int
    assignment: dict[str, int]
    centroids: np.ndarray
    sse: float
    iterations: int
    seed: int
    sse_trace: list[float] = field(default_factory=list, repr=False)

    def members(self) -> dict[int, list[str]]:
        table: dict[int, list[str]] = {c: [] for c in range(self.k)}
        for doc_id, c in sorted(self.assignment.items()):
            table[c].append(doc_id)
        return table


def build_vocabulary(docs: Sequence[PreprocessedDocument], min_term_freq: int = 1) -> Vocabulary:
    if min_term_freq < 1:
        raise UsageError("min_term_freq must be >= 1")
    df = Counter()
    for doc in docs:
        df.update(set(doc.tokens))
    terms = sorted(t for t, c in df.items() if c >= min_term_freq)
    if not terms:
        raise UsageError(
            f"vocabulary is empty at min_term_freq={min_term_freq}; try a lower value"
        )
    return Vocabulary(terms=tuple(terms), min_term_freq=min_term_freq)


def vectorize(doc: PreprocessedDocument, vocab: Vocabulary) -> TermVector:
    counts: dict[int, int] = {}
    for tok in doc.tokens:
        i = vocab.index(tok)
        if i is not None:
            counts[i] = counts.get(i, 0) + 1
    return TermVector(doc_id=doc.id, weights=dict(sorted(counts.items())), dim=len(vocab))


def to_matrix(vectors: Sequence[TermVector]) -> np.ndarray:
    """Stack vectors densely and scale each row to unit L2 norm (zero rows stay zero)."""
    dim = max(v.dim for v in vectors)
    X = np.zeros((len(vectors), dim))
    for r, v in enumerate(vectors):
        for i, w in v.weights.items():
            X[r, i] = w
    norms = np.linalg.norm(X, axis=1)
    nz = norms > 0
    X[nz] /= norms[nz, None]
    return X


def _sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Exact squared distances by explicit differences."""
    out = np.empty((X.shape[0], C.shape[0]))
    for j in range(C.shape[0]):
        diff = X - C[j]
        out[:, j] = np.einsum("ij,ij->i", diff, diff)
    return out


def _fast_sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    xx = np.einsum("ij,ij->i", X, X)
    cc = np.einsum("ij,ij->i", C, C)
    return np.maximum(xx[:, None] - 2.0 * (X @ C.T) + cc[None, :], 0.0)


def compute_sse(X: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    diff = X - centroids[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def _kmeanspp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy k-means++: draw a few D^2-weighted candidates per step and
    keep the one that lowers the potential most."""
    n = X.shape[0]
    trials = 2 + int(math.log(k))
    chosen = [int(rng.integers(n))]
    closest = _fast_sq_dists(X, X[chosen])[:, 0]
    for _ in range(1, k):
        total = closest.sum()
        if total <= 0:
            # every point coincides with a centre; take unused points in order
            unused = [i for i in range(n) if i not in chosen]
            chosen.append(unused[0])
            continue
        cand = rng.choice(n, size=trials, p=closest / total)
        cand_d = _fast_sq_dists(X, X[cand])
        pots = np.minimum(closest[:, None], cand_d).sum(axis=0)
        best = int(np.argmin(pots))
        chosen.append(int(cand[best]))
        closest = np.minimum(closest, cand_d[:, best])
    return X[chosen].copy()


def _update(X: np.ndarray, labels: np.ndarray, k: int, prev: np.ndarray) -> np.ndarray:
    """Recompute centroids as member means, repairing empty clusters by
    moving in the point farthest from its own centroid. Mutates ``labels``."""
    sizes = np.bincount(labels, minlength=k)
    if (sizes == 0).any():
        diff = X - prev[labels]
        far = np.einsum("ij,ij->i", diff, diff)
        order = np.lexsort((np.arange(len(far)), -far))
        moved = set()
        for c in np.flatnonzero(sizes == 0):
            for i in order:
                if i not in moved and sizes[labels[i]] > 1:
                    break
            sizes[labels[i]] -= 1
            labels[i] = c
            sizes[c] = 1
            moved.add(int(i))
            log.debug("re-seeded empty cluster %d with point %d", c, i)
    C = np.zeros_like(prev)
    np.add.at(C, labels, X)
    C /= sizes[:, None]
    return C


def _assign(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Nearest centroid per row, lowest index on ties.

    Distances come from the BLAS expansion; rows whose two best centroids
    are within rounding distance are re-decided with exact differences so
    that assignment agrees with the SSE it is meant to lower.
    """
    D = _fast_sq_dists(X, C)
    labels = np.argmin(D, axis=1)
    best = D[np.arange(len(D)), labels]
    near = D <= best[:, None] + _TIE_EPS
    for i in np.flatnonzero(near.sum(axis=1) > 1):
        cols = np.flatnonzero(near[i])
        exact = _sq_dists(X[i : i + 1], C[cols])[0]
        labels[i] = cols[int(np.argmin(exact))]
    return labels


def kmeans_matrix(
    X: np.ndarray, k: int, seed: int = 0, max_iter: int = 100, tol: float = 1e-4
) -> tuple[np.ndarray, np.ndarray, list[float], int]:
    n = X.shape[0]
    if k <= 0 or k > n:
        raise UsageError(f"k must be in [1, {n}], got {k}")
    if max_iter < 1:
        raise UsageError("max_iter must be >= 1")
    if tol < 0:
        raise UsageError("tol must be >= 0")

    rng = np.random.default_rng(seed)
    C = _kmeanspp(X, k, rng)
    labels = _assign(X, C)
    C = _update(X, labels, k, C)
    trace = [compute_sse(X, labels, C)]
    iterations = 1
    while iterations < max_iter:
        new = _assign(X, C)
        if np.array_equal(new, labels):
            break
        labels = new
        C_new = _update(X, labels, k, C)
        shift = float(np.linalg.norm(C_new - C))
        C = C_new
        trace.append(compute_sse(X, labels, C))
        iterations += 1
        if shift < tol:
            break
    return labels, C, trace, iterations


def kmeans(
    vectors: Sequence[TermVector],
    k: int,
    seed: int = 0,
    max_iter: int = 100,
    tol: float = 1e-4,
) -> ClusterAssignment:
    """Lloyd's algorithm on L2-normalized term vectors with k-means++ seeding."""
    if not vectors:
        raise UsageError("no vectors to cluster")
    X = to_matrix(vectors)
    labels, C, trace, iterations = kmeans_matrix(X, k, seed, max_iter, tol)
    log.debug("kmeans k=%d seed=%d sse trace %s", k, seed, trace)
    return ClusterAssignment(
        k=k,
        assignment={v.doc_id: int(c) for v, c in zip(vectors, labels)},
        centroids=C,
        sse=trace[-1],
        iterations=iterations,
        seed=seed,
        sse_trace=trace,
    )


def sweep_k(
    vectors: Sequence[TermVector], k_values: Sequence[int], seed: int = 0, **kw
) -> list[tuple[int, float]]:
    return [(k, kmeans(vectors, k, seed=seed, **kw).sse) for k in k_values]


def default_k(n_docs: int) -> int:
    return max(1, min(n_docs, math.ceil(math.sqrt(n_docs / 2))))

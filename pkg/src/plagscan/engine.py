"""Two-phase detection pipeline: optional k-means pruning, then pairwise
n-gram similarity over whatever pairs survive."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import multiprocessing as mp
import os
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cluster import ClusterAssignment, build_vocabulary, default_k, kmeans, vectorize
from .corpus import Corpus, RawDocument
from .errors import UsageError
from .preprocess import (
    DEFAULT_STOPWORDS,
    PreprocessConfig,
    PreprocessedDocument,
    preprocess_all,
)
from .trigram import SimilarityRecord, TrigramSet, build_trigrams

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MODES = ("full", "clustered")


@dataclass(frozen=True)
class ClusterParams:
    k: int | None = None  # None -> default_k(n)
    seed: int = 0
    min_term_freq: int = 1
    max_iter: int = 100
    tol: float = 1e-4


@dataclass(frozen=True)
class DetectionConfig:
    mode: str = "full"
    ngram_n: int = 3
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    cluster: ClusterParams = field(default_factory=ClusterParams)
    threshold_pct: float = 50.0
    # execution only; never changes results, so it is not echoed in reports
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.ngram_n < 1:
            raise UsageError("ngram_n must be >= 1")
        if not 0 <= self.threshold_pct <= 100:
            raise UsageError("threshold_pct must lie in [0, 100]")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")

    def echo(self) -> dict:
        pp = self.preprocess
        custom = pp.stopword_list != DEFAULT_STOPWORDS
        return {
            "mode": self.mode,
            "ngram_n": self.ngram_n,
            "threshold_pct": self.threshold_pct,
            "preprocess": {
                "stemming": pp.stemming_enabled,
                "min_token_length": pp.min_token_length,
                "stopwords": "custom" if custom else "default",
                "stopword_count": len(pp.stopword_list),
            },
            "cluster": {
                "k": self.cluster.k,
                "seed": self.cluster.seed,
                "min_term_freq": self.cluster.min_term_freq,
                "max_iter": self.cluster.max_iter,
                "tol": self.cluster.tol,
            },
        }


@dataclass
class DetectionReport:
    corpus_name: str
    mode: str
    per_pair: list[SimilarityRecord]
    per_doc_max: dict[str, tuple[str, Fraction] | None]
    cluster_table: dict[int, list[str]]
    comparisons_made: int
    comparisons_possible: int
    timings: dict[str, float]
    config: dict
    clustering: dict | None = None

    def flagged(self, threshold: float | None = None) -> list[SimilarityRecord]:
        t = self.config["threshold_pct"] if threshold is None else threshold
        return [r for r in self.per_pair if r.containment_pct >= t]


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


# worker-side state for the process pool
_POOL_GRAMS: list[frozenset[int]] = []


def _init_pool(grams):
    global _POOL_GRAMS
    _POOL_GRAMS = grams


def _overlap_chunk(pairs):
    g = _POOL_GRAMS
    return [(i, j, len(g[i] & g[j])) for i, j in pairs]


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i : i + size]


def score_pairs(
    sets: Sequence[TrigramSet], pairs: Sequence[tuple[int, int]], workers: int = 1
) -> list[SimilarityRecord]:
    """Score index pairs into records sorted by (doc_a, doc_b)."""
    grams = [s.grams for s in sets]
    if workers <= 1 or len(pairs) < 2 * workers:
        counts = [(i, j, len(grams[i] & grams[j])) for i, j in pairs]
    else:
        size = max(1, math.ceil(len(pairs) / (workers * 4)))
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=ctx, initializer=_init_pool, initargs=(grams,)
        ) as pool:
            counts = [c for part in pool.map(_overlap_chunk, _chunks(list(pairs), size)) for c in part]
    records = [
        SimilarityRecord.from_counts(sets[i].doc_id, sets[j].doc_id, c, sets[i].size, sets[j].size)
        for i, j, c in counts
    ]
    records.sort(key=lambda r: (r.doc_a, r.doc_b))
    return records


def per_document_max(
    doc_ids: Sequence[str], records: Sequence[SimilarityRecord]
) -> dict[str, tuple[str, Fraction] | None]:
    """Highest-containment partner per document; ``None`` when a document
    took part in no comparison. Ties go to the smallest partner id."""
    best: dict[str, tuple[Fraction, str]] = {}
    for r in records:
        for me, other in ((r.doc_a, r.doc_b), (r.doc_b, r.doc_a)):
            cur = best.get(me)
            if cur is None or (-r.containment_pct, other) < (-cur[0], cur[1]):
                best[me] = (r.containment_pct, other)
    return {d: ((best[d][1], best[d][0]) if d in best else None) for d in sorted(doc_ids)}


def _check_corpus(corpus: Corpus) -> None:
    if len(corpus) < 2:
        raise UsageError(f"need at least 2 documents to compare, corpus has {len(corpus)}")


def _preprocess(corpus: Corpus, cfg: DetectionConfig):
    t0 = time.perf_counter()
    docs = preprocess_all(corpus.documents, cfg.preprocess)
    return docs, _ms(t0)


def _cluster(docs: Sequence[PreprocessedDocument], params: ClusterParams):
    t0 = time.perf_counter()
    k = params.k if params.k is not None else default_k(len(docs))
    vocab = build_vocabulary(docs, params.min_term_freq)
    vectors = [vectorize(d, vocab) for d in docs]
    result = kmeans(vectors, k, seed=params.seed, max_iter=params.max_iter, tol=params.tol)
    return result, _ms(t0)


def _pairwise(docs, groups: Sequence[Sequence[int]], cfg: DetectionConfig):
    t0 = time.perf_counter()
    sets = [build_trigrams(d, cfg.ngram_n) for d in docs]
    pairs = [p for g in groups for p in itertools.combinations(sorted(g), 2)]
    records = score_pairs(sets, pairs, cfg.workers)
    return records, _ms(t0)


def _report(corpus, cfg, mode, docs, records, table, clustering, timings) -> DetectionReport:
    n = len(docs)
    return DetectionReport(
        corpus_name=corpus.name,
        mode=mode,
        per_pair=records,
        per_doc_max=per_document_max([d.id for d in docs], records),
        cluster_table=table,
        comparisons_made=len(records),
        comparisons_possible=n * (n - 1) // 2,
        timings=timings,
        config=replace(cfg, mode=mode).echo(),
        clustering=clustering,
    )


def _clustering_summary(result: ClusterAssignment) -> dict:
    return {
        "k": result.k,
        "seed": result.seed,
        "sse": result.sse,
        "iterations": result.iterations,
    }


def _run_full(corpus, cfg, docs, pre_ms):
    t0 = time.perf_counter()
    records, pair_ms = _pairwise(docs, [range(len(docs))], cfg)
    timings = {"preprocess_ms": pre_ms, "cluster_ms": 0.0, "pairwise_ms": pair_ms}
    timings["total_ms"] = pre_ms + _ms(t0)
    return _report(corpus, cfg, "full", docs, records, {}, None, timings)


def _run_clustered(corpus, cfg, docs, pre_ms):
    t0 = time.perf_counter()
    result, cluster_ms = _cluster(docs, cfg.cluster)
    index = {d.id: i for i, d in enumerate(docs)}
    table = result.members()
    groups = [[index[d] for d in members] for members in table.values()]
    records, pair_ms = _pairwise(docs, groups, cfg)
    timings = {"preprocess_ms": pre_ms, "cluster_ms": cluster_ms, "pairwise_ms": pair_ms}
    timings["total_ms"] = pre_ms + _ms(t0)
    return _report(
        corpus, cfg, "clustered", docs, records, table, _clustering_summary(result), timings
    )


def detect_full(corpus: Corpus, cfg: DetectionConfig | None = None) -> DetectionReport:
    """Compare every unordered pair of documents."""
    cfg = cfg or DetectionConfig()
    _check_corpus(corpus)
    docs, pre_ms = _preprocess(corpus, cfg)
    return _run_full(corpus, cfg, docs, pre_ms)


def detect_clustered(corpus: Corpus, cfg: DetectionConfig | None = None) -> DetectionReport:
    """Cluster documents with k-means and compare only within clusters.

    Cross-cluster pairs are never scored, so a document alone in its cluster
    has no entry in ``per_doc_max`` (reported as ``None``).
    """
    cfg = cfg or DetectionConfig(mode="clustered")
    _check_corpus(corpus)
    docs, pre_ms = _preprocess(corpus, cfg)
    return _run_clustered(corpus, cfg, docs, pre_ms)


def detect(corpus: Corpus, cfg: DetectionConfig) -> DetectionReport:
    if cfg.mode == "clustered":
        return detect_clustered(corpus, cfg)
    return detect_full(corpus, cfg)


@dataclass
class BenchResult:
    corpus_name: str
    n_docs: int
    repeats: int
    preprocess_ms: float
    full_total_ms: float
    clustered_total_ms: float
    full_pairwise_ms: float
    clustered_pairwise_ms: float
    clustered_cluster_ms: float
    full_comparisons: int
    clustered_comparisons: int

    @property
    def comparison_ratio(self) -> float:
        return self.clustered_comparisons / self.full_comparisons if self.full_comparisons else 1.0

    @property
    def speedup(self) -> float:
        return self.full_total_ms / self.clustered_total_ms if self.clustered_total_ms else math.inf

    @property
    def pairwise_speedup(self) -> float:
        if not self.clustered_pairwise_ms:
            return math.inf
        return self.full_pairwise_ms / self.clustered_pairwise_ms

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out.update(
            comparison_ratio=self.comparison_ratio,
            speedup=self.speedup,
            pairwise_speedup=self.pairwise_speedup,
        )
        return out


def bench(corpus: Corpus, cfg: DetectionConfig | None = None, repeats: int = 3) -> BenchResult:
    """Time full vs clustered detection on shared preprocessing; medians of
    ``repeats`` runs."""
    cfg = cfg or DetectionConfig()
    if repeats < 1:
        raise UsageError("repeats must be >= 1")
    _check_corpus(corpus)
    docs, pre_ms = _preprocess(corpus, cfg)

    full_runs, clus_runs = [], []
    for _ in range(repeats):
        full_runs.append(_run_full(corpus, cfg, docs, pre_ms))
        clus_runs.append(_run_clustered(corpus, cfg, docs, pre_ms))

    def med(runs, key):
        return statistics.median(r.timings[key] for r in runs)

    return BenchResult(
        corpus_name=corpus.name,
        n_docs=len(docs),
        repeats=repeats,
        preprocess_ms=pre_ms,
        full_total_ms=med(full_runs, "total_ms"),
        clustered_total_ms=med(clus_runs, "total_ms"),
        full_pairwise_ms=med(full_runs, "pairwise_ms"),
        clustered_pairwise_ms=med(clus_runs, "pairwise_ms"),
        clustered_cluster_ms=med(clus_runs, "cluster_ms"),
        full_comparisons=full_runs[0].comparisons_made,
        clustered_comparisons=clus_runs[0].comparisons_made,
    )


# -- report emission ---------------------------------------------------------

def format_pct(value: Fraction) -> str:
    """Round half up to two decimals, exactly."""
    q = math.floor(Fraction(value) * 100 + Fraction(1, 2))
    return f"{q // 100}.{q % 100:02d}"


def _pct_num(value: Fraction) -> float:
    return float(format_pct(value))


def report_to_dict(report: DetectionReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "corpus_name": report.corpus_name,
        "mode": report.mode,
        "config": report.config,
        "comparisons_made": report.comparisons_made,
        "comparisons_possible": report.comparisons_possible,
        "clustering": report.clustering,
        "cluster_table": {str(c): m for c, m in sorted(report.cluster_table.items())},
        "per_doc_max": {
            doc: (
                None
                if best is None
                else {"partner": best[0], "containment_pct": _pct_num(best[1])}
            )
            for doc, best in sorted(report.per_doc_max.items())
        },
        "per_pair": [
            {
                "doc_a": r.doc_a,
                "doc_b": r.doc_b,
                "overlap": r.overlap,
                "containment_pct": _pct_num(r.containment_pct),
                "jaccard_pct": _pct_num(r.jaccard_pct),
            }
            for r in report.per_pair
        ],
        "timings": {k: round(v, 3) for k, v in report.timings.items()},
    }


def render_json(report: DetectionReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def render_csv(report: DetectionReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["doc_a", "doc_b", "overlap", "containment_pct", "jaccard_pct"])
    for r in report.per_pair:
        writer.writerow(
            [r.doc_a, r.doc_b, r.overlap, format_pct(r.containment_pct), format_pct(r.jaccard_pct)]
        )
    return buf.getvalue()


def render_text(report: DetectionReport) -> str:
    threshold = report.config["threshold_pct"]
    lines = [
        f"corpus: {report.corpus_name}",
        f"mode: {report.mode}",
        f"comparisons: {report.comparisons_made} of {report.comparisons_possible} possible",
        "",
        "maximum similarity per document",
    ]
    width = max((len(d) for d in report.per_doc_max), default=8)
    for doc, best in sorted(report.per_doc_max.items()):
        if best is None:
            lines.append(f"  {doc:<{width}}  none")
        else:
            lines.append(f"  {doc:<{width}}  {format_pct(best[1]):>6}%  {best[0]}")

    if report.cluster_table:
        lines += ["", "clusters"]
        for c, members in sorted(report.cluster_table.items()):
            lines.append(f"  {c:>3}  {', '.join(members)}")

    flagged = report.flagged()
    lines += ["", f"pairs at or above {threshold:g}% containment: {len(flagged)}"]
    for r in flagged:
        lines.append(
            f"  {r.doc_a}  {r.doc_b}  {format_pct(r.containment_pct)}%"
            f"  (jaccard {format_pct(r.jaccard_pct)}%)"
        )
    t = report.timings
    lines += [
        "",
        "timings (ms): "
        + ", ".join(f"{k.removesuffix('_ms')} {t[k]:.1f}" for k in sorted(t)),
    ]
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def emit_report(
    report: DetectionReport, format: str = "json", out_path: str | os.PathLike | None = None
) -> str:
    """Render ``report`` and write it to ``out_path`` if given."""
    try:
        render = RENDERERS[format]
    except KeyError:
        raise UsageError(f"unknown report format {format!r}") from None
    text = render(report)
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


# -- synthetic corpora -------------------------------------------------------

_ONSETS = "b c d f g h j k l m n p r s t v z br cr dr fr gr pr tr bl cl fl gl pl sl st sk".split()
_NUCLEI = "a e i o u".split()
_CODAS = ["", "", "n", "r", "l", "s", "m", "k", "t"]


def _pseudo_words(count: int, rng: random.Random) -> list[str]:
    words: list[str] = []
    seen = set(DEFAULT_STOPWORDS)
    while len(words) < count:
        w = "".join(
            rng.choice(_ONSETS) + rng.choice(_NUCLEI) + rng.choice(_CODAS)
            for _ in range(rng.randint(2, 3))
        )
        if w not in seen:
            seen.add(w)
            words.append(w)
    return words


def _as_prose(tokens: Sequence[str], rng: random.Random) -> str:
    out, i = [], 0
    while i < len(tokens):
        n = rng.randint(6, 14)
        sentence = list(tokens[i : i + n])
        sentence[0] = sentence[0].capitalize()
        out.append(" ".join(sentence) + rng.choice([".", ".", ".", ";", "!", "?"]))
        i += n
    return "\n".join(" ".join(out[j : j + 4]) for j in range(0, len(out), 4)) + "\n"


def generate_synthetic_corpus(
    n_docs: int = 100,
    n_groups: int = 10,
    copy_rate: float = 0.9,
    vocab_size: int = 2000,
    doc_len: int = 200,
    seed: int = 0,
) -> Corpus:
    """Planted-plagiarism corpus.

    Each group draws a base document from its own slice of the vocabulary.
    Every member copies the first ``round(copy_rate * doc_len)`` base tokens
    as one contiguous block and surrounds it with fresh tokens from the same
    slice, split randomly between prefix and suffix. Ids are
    ``g<group>_<member>.txt``.
    """
    if n_docs < 1 or n_groups < 1 or n_groups > n_docs:
        raise UsageError("need 1 <= n_groups <= n_docs")
    if not 0.0 <= copy_rate <= 1.0:
        raise UsageError("copy_rate must lie in [0, 1]")
    if doc_len < 1:
        raise UsageError("doc_len must be >= 1")
    if vocab_size < n_groups:
        raise UsageError("vocab_size must be at least n_groups")

    rng = random.Random(seed)
    vocab = _pseudo_words(vocab_size, rng)
    per_group = vocab_size // n_groups
    sizes = [n_docs // n_groups + (g < n_docs % n_groups) for g in range(n_groups)]
    gw = len(str(n_groups - 1))
    mw = len(str(max(sizes) - 1))
    n_copy = round(copy_rate * doc_len)

    docs = []
    for g, size in enumerate(sizes):
        words = vocab[g * per_group : (g + 1) * per_group]
        base = [rng.choice(words) for _ in range(doc_len)]
        block = base[:n_copy]
        for m in range(size):
            fresh = [rng.choice(words) for _ in range(doc_len - n_copy)]
            cut = rng.randint(0, len(fresh))
            tokens = fresh[:cut] + block + fresh[cut:]
            doc_id = f"g{g:0{gw}d}_{m:0{mw}d}.txt"
            docs.append(RawDocument(id=doc_id, path=doc_id, text=_as_prose(tokens, rng)))
    return Corpus(name=f"synthetic-seed{seed}", documents=tuple(docs))


def group_of(doc_id: str) -> str:
    """Group label of a synthetic document id."""
    return Path(doc_id).name.split("_", 1)[0]


def write_corpus(corpus: Corpus, out_dir: str | os.PathLike) -> list[Path]:
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for doc in corpus:
        path = root / doc.id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(doc.text, encoding="utf-8")
        written.append(path)
    return written

"""Command-line entry point: ``plagscan detect|bench|gen|stem``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .cluster import build_vocabulary, default_k, sweep_k, vectorize
from .corpus import load_corpus
from .engine import (
    BenchResult,
    ClusterParams,
    DetectionConfig,
    bench,
    detect,
    emit_report,
    generate_synthetic_corpus,
    write_corpus,
)
from .errors import CorpusError, UsageError
from .preprocess import DEFAULT_STOPWORDS, PreprocessConfig, load_stopwords, preprocess_all
from .stemmer import porter_stem

log = logging.getLogger("plagscan")

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("directory", help="directory of plain-text documents")
    p.add_argument("--ext", action="append", default=None,
                   help="file extension to load (repeatable, default: txt)")
    p.add_argument("--mode", choices=["full", "clustered"], default="full")
    p.add_argument("--ngram", type=int, default=3, help="words per n-gram (default 3)")

    g = p.add_argument_group("preprocessing")
    g.add_argument("--stopwords", metavar="FILE", help="stop-word file, one word per line")
    g.add_argument("--stem", dest="stem", action="store_true", help="apply Porter stemming")
    g.add_argument("--no-stem", dest="stem", action="store_false")
    g.add_argument("--min-token-len", type=int, default=1)
    p.set_defaults(stem=False)

    g = p.add_argument_group("clustering")
    g.add_argument("--k", type=int, default=None, help="number of clusters (default ceil(sqrt(n/2)))")
    g.add_argument("--kmeans-seed", type=int, default=0)
    g.add_argument("--min-term-freq", type=int, default=1)
    g.add_argument("--max-iter", type=int, default=100)
    g.add_argument("--tol", type=float, default=1e-4)
    g.add_argument("--sweep-k", type=_int_list, metavar="K1,K2,...",
                   help="print within-cluster SSE for each k before running")

    p.add_argument("--threshold", type=float, default=50.0,
                   help="highlight pairs at or above this containment %% (default 50)")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plagscan", description="Word n-gram plagiarism detection over a corpus.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="score document pairs and write a report")
    _add_pipeline_flags(p)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    p = sub.add_parser("bench", help="time full vs clustered detection")
    _add_pipeline_flags(p)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("gen", help="write a synthetic planted-plagiarism corpus")
    p.add_argument("--docs", type=int, default=100)
    p.add_argument("--groups", type=int, default=10)
    p.add_argument("--copy-rate", type=float, default=0.9)
    p.add_argument("--vocab", type=int, default=2000)
    p.add_argument("--len", dest="doc_len", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="DIR")

    sub.add_parser("stem", help="Porter-stem words from stdin, one per line")
    return parser


def config_from_args(args: argparse.Namespace) -> DetectionConfig:
    stop = load_stopwords(args.stopwords) if args.stopwords else DEFAULT_STOPWORDS
    return DetectionConfig(
        mode=args.mode,
        ngram_n=args.ngram,
        preprocess=PreprocessConfig(
            stopword_list=stop,
            stemming_enabled=args.stem,
            min_token_length=args.min_token_len,
        ),
        cluster=ClusterParams(
            k=args.k,
            seed=args.kmeans_seed,
            min_term_freq=args.min_term_freq,
            max_iter=args.max_iter,
            tol=args.tol,
        ),
        threshold_pct=args.threshold,
        workers=args.workers,
    )


def _print_sweep(corpus, cfg: DetectionConfig, k_values) -> None:
    docs = preprocess_all(corpus.documents, cfg.preprocess)
    vocab = build_vocabulary(docs, cfg.cluster.min_term_freq)
    vectors = [vectorize(d, vocab) for d in docs]
    rows = sweep_k(vectors, k_values, seed=cfg.cluster.seed,
                   max_iter=cfg.cluster.max_iter, tol=cfg.cluster.tol)
    print("     k          sse", file=sys.stderr)
    for k, sse in rows:
        print(f"{k:>6}  {sse:11.4f}", file=sys.stderr)


def _load(args):
    corpus = load_corpus(args.directory, args.ext or ["txt"])
    cfg = config_from_args(args)
    if args.sweep_k:
        _print_sweep(corpus, cfg, args.sweep_k)
    if args.mode == "clustered" and args.k is None:
        log.info("no --k given, using k=%d", default_k(len(corpus)))
    return corpus, cfg


def cmd_detect(args) -> int:
    corpus, cfg = _load(args)
    report = detect(corpus, cfg)
    text = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_text(res: BenchResult) -> str:
    return "\n".join([
        f"corpus: {res.corpus_name} ({res.n_docs} documents, median of {res.repeats})",
        f"preprocess (shared): {res.preprocess_ms:9.1f} ms",
        f"full:      total {res.full_total_ms:9.1f} ms  pairwise {res.full_pairwise_ms:9.1f} ms"
        f"  comparisons {res.full_comparisons}",
        f"clustered: total {res.clustered_total_ms:9.1f} ms  pairwise {res.clustered_pairwise_ms:9.1f} ms"
        f"  comparisons {res.clustered_comparisons}  (kmeans {res.clustered_cluster_ms:.1f} ms)",
        f"speedup {res.speedup:.2f}x total, {res.pairwise_speedup:.2f}x pairwise;"
        f" comparison ratio {res.comparison_ratio:.4f}",
    ]) + "\n"


def cmd_bench(args) -> int:
    corpus, cfg = _load(args)
    res = bench(corpus, cfg, repeats=args.repeats)
    if args.format == "json":
        sys.stdout.write(json.dumps(res.as_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(_bench_text(res))
    return EXIT_OK


def cmd_gen(args) -> int:
    corpus = generate_synthetic_corpus(
        args.docs, args.groups, args.copy_rate, args.vocab, args.doc_len, args.seed
    )
    paths = write_corpus(corpus, args.out)
    print(f"wrote {len(paths)} documents to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_stem(args) -> int:
    out = sys.stdout
    for line in sys.stdin:
        out.write(porter_stem(line.strip()) + "\n")
    return EXIT_OK


COMMANDS = {"detect": cmd_detect, "bench": cmd_bench, "gen": cmd_gen, "stem": cmd_stem}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"plagscan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, OSError) as exc:
        print(f"plagscan: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: build, query, verify, bench, oracle-check.

Exit codes: 0 ok, 1 internal error, 2 unsupported query class,
3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from proxikey.bench import BenchParams, format_bench, run_bench
from proxikey.config import Config, resolve_config
from proxikey.errors import ProxikeyError, QueryClassError, VerificationError
from proxikey.index.baseline import baseline_search_subquery
from proxikey.index.build import build_index_data, doc_lemma_occurrences
from proxikey.index.core import ReadCounter
from proxikey.index.io import load_index, save_index
from proxikey.oracle import oracle_fragments
from proxikey.search.engine import TraceSink, search, search_subquery
from proxikey.search.plan import Subquery, select_keys
from proxikey.text import Dictionary, tokenize
from proxikey.verify import verify_index

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_QUERY_CLASS = 2
EXIT_VERIFICATION = 3


def _read_corpus(corpus_dir: str) -> list[tuple[str, str]]:
    """Documents as (name, text), sorted by filename for stable doc ids."""
    if not os.path.isdir(corpus_dir):
        raise ProxikeyError(f"corpus directory not found: {corpus_dir}")
    corpus = []
    for name in sorted(os.listdir(corpus_dir)):
        if not name.endswith(".txt"):
            continue
        path = os.path.join(corpus_dir, name)
        try:
            with open(path, encoding="utf-8") as fh:
                corpus.append((name, fh.read()))
        except OSError as exc:
            raise ProxikeyError(f"cannot read corpus file {path}: {exc}") from exc
    if not corpus:
        raise ProxikeyError(f"no .txt documents in {corpus_dir}")
    return corpus


def _load_dictionary(path: str | None) -> Dictionary:
    return Dictionary.load(path) if path else Dictionary()


def _config_from_args(args) -> Config:
    flags = {
        "max_distance": getattr(args, "max_distance", None),
        "sw_count": getattr(args, "sw_count", None),
        "fu_count": getattr(args, "fu_count", None),
        "window_size": getattr(args, "window_size", None),
        "dictionary": getattr(args, "dictionary", None),
        "index_dir": getattr(args, "index", None),
    }
    return resolve_config(getattr(args, "config", None), flags)


def cmd_build(args) -> int:
    cfg = _config_from_args(args)
    if not cfg.index_dir:
        raise ProxikeyError("--index directory is required")
    corpus = _read_corpus(args.corpus)
    dictionary = _load_dictionary(cfg.dictionary)
    index = build_index_data(
        corpus, dictionary, cfg, corpus_dir=args.corpus, dictionary_path=cfg.dictionary
    )
    summary = save_index(index, cfg.index_dir)
    for key in ("docs", "tokens", "trikeys", "tri_postings", "bytes"):
        print(f"{key}={summary[key]}")
    return EXIT_OK


def cmd_query(args) -> int:
    cfg = _config_from_args(args)
    if not cfg.index_dir:
        raise ProxikeyError("--index directory is required")
    index = load_index(cfg.index_dir)
    dictionary = _load_dictionary(cfg.dictionary or index.dictionary_path)
    window_size = args.window_size or cfg.window_size
    trace = TraceSink(index.lexicon.lemma_of) if args.trace else None
    results, postings_read = search(
        args.query,
        index,
        dictionary,
        window_size=window_size,
        trace=trace,
        start_override=args.start_override,
        use_baseline=args.baseline,
    )
    if trace:
        for line in trace.lines:
            print(line)
    limit = args.max_results if args.max_results is not None else len(results)
    for result in results[:limit]:
        frags = ",".join(f"({s},{e})" for s, e in result.fragments)
        print(f"doc={result.doc} score={result.score:.6f} fragments=[{frags}]")
    print(f"postings_read={postings_read}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    if not cfg.index_dir:
        raise ProxikeyError("--index directory is required")
    index = load_index(cfg.index_dir)
    corpus_dir = args.corpus or index.corpus_dir
    dict_path = cfg.dictionary or index.dictionary_path
    dictionary = None
    if corpus_dir and os.path.isdir(corpus_dir):
        dictionary = _load_dictionary(dict_path)
    verify_index(index, corpus_dir, dictionary, token_limit=args.oracle_limit)
    print("verify=pass")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config_from_args(args)
    params = BenchParams(
        docs=args.docs,
        vocab=args.vocab,
        zipf=args.zipf,
        queries=args.queries,
        seed=args.seed,
    )
    result = run_bench(params, cfg)
    print(format_bench(result))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    """Compare the engine against the brute-force oracle on a real corpus."""
    cfg = _config_from_args(args)
    corpus = _read_corpus(args.corpus)
    dictionary = _load_dictionary(cfg.dictionary)
    index = build_index_data(corpus, dictionary, cfg)
    sw = cfg.sw_count
    per_doc_occs = []
    for _, text in corpus:
        occs = sorted(
            oc
            for oc in doc_lemma_occurrences(tokenize(text), dictionary, index.lexicon)
            if oc[1] < sw
        )
        per_doc_occs.append(occs)
    stop_ranks = sorted({rank for occs in per_doc_occs for _, rank in occs})
    if len(stop_ranks) < 2:
        raise ProxikeyError("corpus has fewer than two stop lemmas")
    rng = random.Random(args.seed)
    failures = 0
    for case in range(args.queries):
        length = rng.randint(2, min(6, max(2, len(stop_ranks))))
        subquery = Subquery(tuple(rng.choices(stop_ranks, k=length)))
        plan = select_keys(subquery)
        engine = {
            (f.doc, f.start, f.end) for f in search_subquery(index, plan)
        }
        expected = {
            (doc_id, s, e)
            for doc_id, occs in enumerate(per_doc_occs)
            for s, e in oracle_fragments(occs, plan, cfg.max_distance)
        }
        if engine != expected:
            failures += 1
            print(f"case {case}: subquery {subquery.lemmas} MISMATCH")
    print(f"oracle_cases={args.queries}")
    print(f"oracle_failures={failures}")
    if failures:
        raise VerificationError(f"{failures} oracle mismatches")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxikey",
        description="Proximity search over three-component key indexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--index", help="index directory")
        p.add_argument("--dictionary", help="lemma dictionary file")
        p.add_argument("--max-distance", type=int, dest="max_distance")
        p.add_argument("--sw-count", type=int, dest="sw_count")
        p.add_argument("--fu-count", type=int, dest="fu_count")
        p.add_argument("--window-size", type=int, dest="window_size")

    p_build = sub.add_parser("build", help="index a corpus directory")
    p_build.add_argument("corpus")
    add_common(p_build)
    p_build.set_defaults(func=cmd_build)

    p_query = sub.add_parser("query", help="evaluate a stop-only query")
    p_query.add_argument("query")
    add_common(p_query)
    p_query.add_argument("--trace", action="store_true")
    p_query.add_argument("--baseline", action="store_true")
    p_query.add_argument("--max-results", type=int, dest="max_results")
    p_query.add_argument(
        "--start-override",
        type=int,
        dest="start_override",
        help="seed the first window origin (trace fixtures)",
    )
    p_query.set_defaults(func=cmd_query)

    p_verify = sub.add_parser("verify", help="check index invariants")
    add_common(p_verify)
    p_verify.add_argument("--corpus", help="corpus dir for oracle recomputation")
    p_verify.add_argument(
        "--oracle-limit",
        type=int,
        default=50_000,
        help="skip oracle recomputation above this many tokens",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="synthetic corpus benchmark")
    add_common(p_bench)
    p_bench.add_argument("--docs", type=int, default=10_000)
    p_bench.add_argument("--vocab", type=int, default=2_000)
    p_bench.add_argument("--zipf", type=float, default=1.15)
    p_bench.add_argument("--queries", type=int, default=60)
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.set_defaults(func=cmd_bench)

    p_oracle = sub.add_parser(
        "oracle-check", help="compare engine output against the brute-force oracle"
    )
    p_oracle.add_argument("corpus")
    add_common(p_oracle)
    p_oracle.add_argument("--queries", type=int, default=50)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QueryClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUERY_CLASS
    except VerificationError as exc:
        print(f"verify=fail {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except ProxikeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

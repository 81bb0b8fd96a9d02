"""Synthetic-corpus benchmark: tri-key strategy vs ordinary-index baseline.

Generates a Zipf-distributed corpus, builds one index (which carries
both the ordinary positional lists and the tri-key lists), runs a batch
of stop-only queries through both strategies, and reports mean postings
consumed plus wall time per strategy.  Everything except the timing
fields is a pure function of the parameters and seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from proxikey.config import Config
from proxikey.index.baseline import baseline_search_subquery
from proxikey.index.build import build_index_data
from proxikey.index.core import ReadCounter
from proxikey.search.engine import search_subquery
from proxikey.search.plan import Subquery, select_keys
from proxikey.text import Dictionary


@dataclass
class BenchParams:
    docs: int = 10_000
    vocab: int = 2_000
    zipf: float = 1.15
    queries: int = 60
    seed: int = 7
    min_len: int = 16
    max_len: int = 24
    min_words: int = 3
    max_words: int = 5


def zipf_weights(vocab: int, exponent: float) -> list[float]:
    return [1.0 / (i + 1) ** exponent for i in range(vocab)]


def generate_corpus(params: BenchParams) -> list[tuple[str, str]]:
    rng = random.Random(params.seed)
    surfaces = [f"w{i:04d}" for i in range(params.vocab)]
    weights = zipf_weights(params.vocab, params.zipf)
    corpus = []
    for d in range(params.docs):
        length = rng.randint(params.min_len, params.max_len)
        words = rng.choices(surfaces, weights=weights, k=length)
        corpus.append((f"doc{d:06d}.txt", " ".join(words)))
    return corpus


def generate_queries(params: BenchParams, index) -> list[Subquery]:
    """Stop-only subqueries of 3..5 lemmas, Zipf-weighted like the corpus."""
    rng = random.Random(params.seed + 1)
    sw = index.config.sw_count
    stop_ranks = [
        rank for rank in range(min(sw, len(index.lexicon))) if index.lexicon.counts[rank]
    ]
    weights = [index.lexicon.counts[rank] for rank in stop_ranks]
    queries = []
    for _ in range(params.queries):
        length = rng.randint(params.min_words, params.max_words)
        lemmas = tuple(rng.choices(stop_ranks, weights=weights, k=length))
        queries.append(Subquery(lemmas))
    return queries


def run_bench(params: BenchParams, cfg: Config | None = None) -> dict:
    cfg = cfg or Config()
    corpus = generate_corpus(params)
    t0 = time.monotonic()
    index = build_index_data(corpus, Dictionary(), cfg)
    build_seconds = time.monotonic() - t0

    queries = generate_queries(params, index)
    tri_reads: list[int] = []
    base_reads: list[int] = []
    tri_seconds = 0.0
    base_seconds = 0.0
    mismatches = 0
    for subquery in queries:
        plan = select_keys(subquery)
        counter = ReadCounter()
        t0 = time.monotonic()
        tri_frags = search_subquery(index, plan, counter=counter)
        tri_seconds += time.monotonic() - t0
        tri_reads.append(counter.count)

        counter = ReadCounter()
        t0 = time.monotonic()
        base_frags = baseline_search_subquery(index, subquery, plan, counter)
        base_seconds += time.monotonic() - t0
        base_reads.append(counter.count)
        if tri_frags != base_frags:
            mismatches += 1

    n = len(queries) or 1
    tri_mean = sum(tri_reads) / n
    base_mean = sum(base_reads) / n
    return {
        "docs": params.docs,
        "vocab": params.vocab,
        "zipf": params.zipf,
        "seed": params.seed,
        "queries": len(queries),
        "trikeys": len(index.tri_keys()),
        "baseline_mean_postings": base_mean,
        "trikey_mean_postings": tri_mean,
        "reduction_factor": (base_mean / tri_mean) if tri_mean else float("inf"),
        "fragment_mismatches": mismatches,
        "time_build_s": build_seconds,
        "time_baseline_s": base_seconds,
        "time_trikey_s": tri_seconds,
    }


def format_bench(result: dict) -> str:
    """Stable key=value lines; time_* fields carry the only wall-clock data."""
    lines = []
    for key in (
        "docs",
        "vocab",
        "zipf",
        "seed",
        "queries",
        "trikeys",
        "baseline_mean_postings",
        "trikey_mean_postings",
        "reduction_factor",
        "fragment_mismatches",
    ):
        value = result[key]
        if isinstance(value, float):
            lines.append(f"{key}={value:.2f}")
        else:
            lines.append(f"{key}={value}")
    for key in ("time_build_s", "time_baseline_s", "time_trikey_s"):
        lines.append(f"{key}={result[key]:.3f}")
    return "\n".join(lines)

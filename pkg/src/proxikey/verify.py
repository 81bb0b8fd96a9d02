"""Index integrity checks: structural invariants plus oracle recomputation."""

from __future__ import annotations

import os

from proxikey.errors import VerificationError
from proxikey.index.build import doc_lemma_occurrences
from proxikey.index.core import IndexData
from proxikey.oracle import oracle_tri_postings
from proxikey.text import Dictionary, tokenize

DEFAULT_ORACLE_TOKEN_LIMIT = 50_000


def _check_tri_list(key, postings, max_distance, sw_count, problems):
    f, s, t = key
    if not f <= s <= t:
        problems.append(f"key {key}: components out of rank order")
    if t >= sw_count:
        problems.append(f"key {key}: component {t} is not a stop lemma")
    prev = None
    for offset, posting in enumerate(postings):
        doc, p, d1, d2 = posting
        where = f"key {key} posting {offset}"
        if prev is not None and posting <= prev:
            problems.append(f"{where}: not strictly increasing")
        prev = posting
        if doc < 0 or p < 0:
            problems.append(f"{where}: negative doc or position")
        for name, d in (("d1", d1), ("d2", d2)):
            if not 1 <= abs(d) <= max_distance:
                problems.append(f"{where}: {name}={d} outside [1, {max_distance}]")
        if d1 == d2:
            problems.append(f"{where}: d1 == d2")
        if f == s and d1 <= 0:
            problems.append(f"{where}: repeated anchor lemma requires d1 > 0")
        if s == t and d1 >= d2:
            problems.append(f"{where}: repeated partner lemma requires d1 < d2")


def verify_structure(index: IndexData) -> list[str]:
    """Posting-order and distance invariants; returns problem strings."""
    problems: list[str] = []
    m = index.max_distance
    sw = index.config.sw_count
    for key in index.tri_keys():
        _check_tri_list(key, index.tri_postings(key), m, sw, problems)
    for lemma in sorted(index.ordinary):
        prev = None
        for offset, posting in enumerate(index.ordinary[lemma]):
            if prev is not None and posting <= prev:
                problems.append(
                    f"ordinary list {lemma} posting {offset}: not strictly increasing"
                )
            prev = posting
    n_docs = len(index.docs)
    for key in index.tri_keys():
        for posting in index.tri_postings(key):
            if posting[0] >= n_docs:
                problems.append(f"key {key}: doc id {posting[0]} out of range")
                break
    return problems


def _load_corpus(corpus_dir: str) -> list[tuple[str, str]]:
    names = sorted(n for n in os.listdir(corpus_dir) if n.endswith(".txt"))
    corpus = []
    for name in names:
        with open(os.path.join(corpus_dir, name), encoding="utf-8") as fh:
            corpus.append((name, fh.read()))
    return corpus


def verify_against_corpus(
    index: IndexData,
    corpus_dir: str,
    dictionary: Dictionary,
    token_limit: int = DEFAULT_ORACLE_TOKEN_LIMIT,
) -> list[str]:
    """Recompute tri postings with the oracle and compare, key by key."""
    problems: list[str] = []
    corpus = _load_corpus(corpus_dir)
    if [d.name for d in index.docs] != [name for name, _ in corpus]:
        return [f"document table does not match corpus dir {corpus_dir}"]
    total_tokens = sum(d.tokens for d in index.docs)
    if total_tokens > token_limit:
        return []  # oracle recomputation skipped above the size threshold
    expected: dict = {}
    sw = index.config.sw_count
    for doc_id, (_, text) in enumerate(corpus):
        occs = sorted(doc_lemma_occurrences(tokenize(text), dictionary, index.lexicon))
        stop_occs = [oc for oc in occs if oc[1] < sw]
        for key, postings in oracle_tri_postings(
            stop_occs, index.max_distance, doc_id
        ).items():
            expected.setdefault(key, []).extend(postings)
    built_keys = set(index.tri_keys())
    if built_keys != set(expected):
        missing = sorted(set(expected) - built_keys)[:3]
        extra = sorted(built_keys - set(expected))[:3]
        problems.append(f"key sets differ: missing {missing}, unexpected {extra}")
    for key in sorted(built_keys & set(expected)):
        if index.tri_postings(key) != sorted(expected[key]):
            problems.append(f"key {key}: postings differ from oracle")
    return problems


def verify_index(
    index: IndexData,
    corpus_dir: str | None = None,
    dictionary: Dictionary | None = None,
    token_limit: int = DEFAULT_ORACLE_TOKEN_LIMIT,
) -> None:
    """Raise VerificationError listing every violated invariant."""
    problems = verify_structure(index)
    if corpus_dir and dictionary is not None and os.path.isdir(corpus_dir):
        problems += verify_against_corpus(index, corpus_dir, dictionary, token_limit)
    if problems:
        raise VerificationError("; ".join(problems))

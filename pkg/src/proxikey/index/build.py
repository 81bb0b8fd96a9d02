"""Corpus indexing: lexicon counts, ordinary lists, tri-key enumeration.

A tri-key posting (doc, p, d1, d2) records one co-occurrence of three
stop-lemma occurrences at pairwise distinct positions, anchored at the
occurrence whose (rank, position) sorts first.  The remaining two are
ordered the same way, giving the key components and the signed word
distances d1/d2 from the anchor, each within max_distance.  Sorting by
(rank, position) makes every unordered occurrence triple produce at
most one posting and fixes the duplicate-lemma conventions:

* equal second/third lemma: d1 < d2;
* anchor lemma repeated: the anchor is the earlier occurrence (d1 > 0);
* all three equal: 0 < d1 < d2.
"""

from __future__ import annotations

from collections import Counter

from proxikey.config import Config
from proxikey.index.core import DocInfo, IndexData, TriKey
from proxikey.lexicon import Lexicon
from proxikey.text import Dictionary, tokenize

MAX_DOC_TOKENS = 2**31

Occurrence = tuple[int, int]  # (position, lemma rank)


def enumerate_tri_postings(
    occurrences: list[Occurrence], doc_id: int, max_distance: int
) -> dict[TriKey, list[tuple[int, int, int, int]]]:
    """Tri-key postings for one document's stop-lemma occurrences.

    ``occurrences`` must be sorted by position; multiple lemmas may share
    one position (a token with several lemmas) but each (position, lemma)
    pair appears once.
    """
    out: dict[TriKey, list[tuple[int, int, int, int]]] = {}
    n = len(occurrences)
    lo = 0
    for i in range(n):
        p, rank = occurrences[i]
        # Partner candidates: within max_distance of the anchor position,
        # at a different position, and after the anchor in (rank, pos) order.
        while occurrences[lo][0] < p - max_distance:
            lo += 1
        cand: list[tuple[int, int]] = []  # (rank, pos)
        j = lo
        limit = p + max_distance
        while j < n:
            pj, rj = occurrences[j]
            if pj > limit:
                break
            if pj != p and (rj, pj) > (rank, p):
                cand.append((rj, pj))
            j += 1
        if len(cand) < 2:
            continue
        cand.sort()
        for a in range(len(cand) - 1):
            ra, pa = cand[a]
            for b in range(a + 1, len(cand)):
                rb, pb = cand[b]
                if pa == pb:
                    continue
                key = (rank, ra, rb)
                posting = (doc_id, p, pa - p, pb - p)
                bucket = out.get(key)
                if bucket is None:
                    out[key] = [posting]
                else:
                    bucket.append(posting)
    return out


def doc_lemma_occurrences(
    tokens, dictionary: Dictionary, lexicon: Lexicon
) -> list[Occurrence]:
    """All (position, lemma rank) pairs for a tokenized document."""
    occs: list[Occurrence] = []
    for token in tokens:
        for lemma in dictionary.lemmas(token.surface):
            rank = lexicon.rank.get(lemma)
            if rank is not None:
                occs.append((token.position, rank))
    return occs


def count_corpus_lemmas(
    corpus: list[tuple[str, str]], dictionary: Dictionary
) -> dict[str, int]:
    """Token-level lemma occurrence counts over a (name, text) corpus."""
    counts: Counter[str] = Counter()
    for _, text in corpus:
        for token in tokenize(text):
            counts.update(dictionary.lemmas(token.surface))
    return dict(counts)


def build_index_data(
    corpus: list[tuple[str, str]],
    dictionary: Dictionary,
    cfg: Config,
    corpus_dir: str | None = None,
    dictionary_path: str | None = None,
) -> IndexData:
    """Build the full in-memory index for a (name, text) corpus.

    Documents get ids in list order, so pass the corpus sorted by name
    for reproducible ids.  The same build is used for the ordinary
    positional index and the tri-key index.
    """
    cfg.validate()
    if not corpus:
        raise ValueError("empty corpus")
    lexicon = Lexicon.from_counts(count_corpus_lemmas(corpus, dictionary))

    docs: list[DocInfo] = []
    ordinary: dict[int, list[tuple[int, int]]] = {}
    tri: dict[TriKey, list[tuple[int, int, int, int]]] = {}
    sw_count = cfg.sw_count
    for doc_id, (name, text) in enumerate(corpus):
        tokens = tokenize(text)
        if len(tokens) >= MAX_DOC_TOKENS:
            raise ValueError(f"document {name!r} exceeds {MAX_DOC_TOKENS} tokens")
        docs.append(DocInfo(name, len(tokens)))
        occs = doc_lemma_occurrences(tokens, dictionary, lexicon)
        occs.sort()
        for pos, rank in occs:
            ordinary.setdefault(rank, []).append((doc_id, pos))
        stop_occs = [oc for oc in occs if oc[1] < sw_count]
        for key, postings in enumerate_tri_postings(
            stop_occs, doc_id, cfg.max_distance
        ).items():
            tri.setdefault(key, []).extend(postings)
    for postings in tri.values():
        postings.sort()
    return IndexData(
        config=Config(
            max_distance=cfg.max_distance,
            sw_count=cfg.sw_count,
            fu_count=cfg.fu_count,
            window_size=cfg.window_size,
        ),
        lexicon=lexicon,
        docs=docs,
        ordinary=ordinary,
        tri=tri,
        corpus_dir=corpus_dir,
        dictionary_path=dictionary_path,
    )

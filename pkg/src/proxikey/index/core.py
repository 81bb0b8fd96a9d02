"""In-memory index representation and posting iterators.

An ``IndexData`` holds everything a query needs: the lexicon, document
table, ordinary positional lists for every lemma, and tri-key lists for
every stop-lemma triple that co-occurs.  Disk persistence (io module)
round-trips this object; tri-key lists loaded from disk stay as encoded
blocks until first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from proxikey.config import Config
from proxikey.errors import CodecError
from proxikey.index.codec import (
    TriPosting,
    decode_tri_block,
)
from proxikey.lexicon import Lexicon

TriKey = tuple[int, int, int]


@dataclass(frozen=True)
class DocInfo:
    name: str
    tokens: int


class ReadCounter:
    """Shared counter of postings consumed during one evaluation."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def add(self, n: int = 1) -> None:
        self.count += n


class PostingIterator:
    """Forward iterator over one sorted posting list.

    ``next()`` must be called once to load the first posting; ``value``
    is undefined once ``exhausted`` is true.  Every loaded posting
    increments the evaluation's shared read counter.
    """

    __slots__ = ("key", "_postings", "_pos", "value", "exhausted", "_counter")

    def __init__(self, key, postings, counter: ReadCounter | None = None):
        self.key = key
        self._postings = postings
        self._pos = -1
        self.value = None
        self.exhausted = False
        self._counter = counter or ReadCounter()

    def next(self) -> bool:
        """Advance to the next posting; False once the list is exhausted."""
        if self.exhausted:
            raise RuntimeError("next() called on an exhausted iterator")
        self._pos += 1
        if self._pos >= len(self._postings):
            self.exhausted = True
            self.value = None
            return False
        self.value = self._postings[self._pos]
        self._counter.add()
        return True

    @property
    def postings_read(self) -> int:
        return self._pos + 1 if self.exhausted else max(self._pos + 1, 0)


@dataclass
class IndexData:
    config: Config
    lexicon: Lexicon
    docs: list[DocInfo]
    ordinary: dict[int, list[tuple[int, int]]]
    tri: dict[TriKey, list[TriPosting]]
    corpus_dir: str | None = None
    dictionary_path: str | None = None
    # Encoded-but-not-decoded lists (populated by the io loader).
    tri_raw: dict[TriKey, tuple[bytes, int, int]] = field(default_factory=dict)

    @property
    def max_distance(self) -> int:
        return self.config.max_distance

    def tri_keys(self):
        """All tri keys present, sorted."""
        return sorted(set(self.tri) | set(self.tri_raw))

    def tri_postings(self, key: TriKey) -> list[TriPosting]:
        """Decoded posting list for a key; [] when absent."""
        hit = self.tri.get(key)
        if hit is not None:
            return hit
        raw = self.tri_raw.pop(key, None)
        if raw is None:
            return []
        data, offset, expected = raw
        try:
            postings = decode_tri_block(data)
        except CodecError as exc:
            raise CodecError(f"trikey {key} at offset {offset}: {exc}") from exc
        if len(postings) != expected:
            raise CodecError(
                f"trikey {key} at offset {offset}: catalog says {expected} "
                f"postings, block holds {len(postings)}"
            )
        self.tri[key] = postings
        return postings

    def tri_iterator(self, key: TriKey, counter: ReadCounter | None = None):
        return PostingIterator(key, self.tri_postings(key), counter)

    def ordinary_list(self, lemma: int) -> list[tuple[int, int]]:
        return self.ordinary.get(lemma, [])

    def ordinary_iterator(self, lemma: int, counter: ReadCounter | None = None):
        return PostingIterator(lemma, self.ordinary_list(lemma), counter)

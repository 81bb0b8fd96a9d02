"""Frequency-ranked lexicon and lemma classification.

Lemmas are ranked by decreasing corpus occurrence count (ties broken by
ascending lemma string, so indexes are reproducible).  The rank doubles
as the lemma id throughout the package.  The first ``sw_count`` ranks
are "stop" lemmas, the next ``fu_count`` are "frequently used", and the
rest are "ordinary".  Stop lemmas are never discarded; the split only
selects which index structures apply.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from proxikey.config import Config
from proxikey.errors import CodecError
from proxikey.varint import read_uvarint, write_uvarint

LEXICON_MAGIC = b"PKFL"
LEXICON_VERSION = 1


class LemmaClass(enum.Enum):
    STOP = "stop"
    FREQUENT = "frequently-used"
    ORDINARY = "ordinary"


@dataclass
class Lexicon:
    """Dense 0-based frequency ranks over the indexed corpus's lemmas."""

    lemmas: list[str]
    counts: list[int]
    rank: dict[str, int] = field(init=False)

    def __post_init__(self) -> None:
        self.rank = {lemma: i for i, lemma in enumerate(self.lemmas)}
        if len(self.rank) != len(self.lemmas):
            raise ValueError("duplicate lemma in lexicon")

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "Lexicon":
        """Rank lemmas by (count desc, lemma asc); error on an empty corpus."""
        if not counts:
            raise ValueError("empty lexicon")
        if any(c < 0 for c in counts.values()):
            raise ValueError("negative occurrence count")
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return cls([lemma for lemma, _ in ordered], [c for _, c in ordered])

    def __len__(self) -> int:
        return len(self.lemmas)

    def rank_of(self, lemma: str) -> int | None:
        return self.rank.get(lemma)

    def lemma_of(self, rank: int) -> str:
        return self.lemmas[rank]

    def count_of(self, lemma: str) -> int:
        return self.counts[self.rank[lemma]]

    def classify(self, lemma: str, cfg: Config) -> LemmaClass:
        """Class of a lemma; unknown lemmas are ordinary by convention."""
        rank = self.rank.get(lemma)
        return self.classify_rank(rank, cfg)

    @staticmethod
    def classify_rank(rank: int | None, cfg: Config) -> LemmaClass:
        if rank is None:
            return LemmaClass.ORDINARY
        if rank < cfg.sw_count:
            return LemmaClass.STOP
        if rank < cfg.sw_count + cfg.fu_count:
            return LemmaClass.FREQUENT
        return LemmaClass.ORDINARY

    def compare(self, a: str, b: str) -> int:
        """Total order by ascending rank: -1, 0, or 1."""
        ra, rb = self.rank[a], self.rank[b]
        return (ra > rb) - (ra < rb)

    def to_bytes(self) -> bytes:
        out = bytearray(LEXICON_MAGIC)
        out.append(LEXICON_VERSION)
        write_uvarint(out, len(self.lemmas))
        for lemma, count in zip(self.lemmas, self.counts):
            raw = lemma.encode("utf-8")
            write_uvarint(out, len(raw))
            out += raw
            write_uvarint(out, count)
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Lexicon":
        if data[:4] != LEXICON_MAGIC:
            raise CodecError("lexicon: bad magic")
        if len(data) < 5 or data[4] != LEXICON_VERSION:
            raise CodecError("lexicon: unsupported version")
        pos = 5
        n, pos = read_uvarint(data, pos)
        lemmas: list[str] = []
        counts: list[int] = []
        for _ in range(n):
            size, pos = read_uvarint(data, pos)
            if pos + size > len(data):
                raise CodecError(f"lexicon: truncated record at offset {pos}")
            lemmas.append(data[pos : pos + size].decode("utf-8"))
            pos += size
            count, pos = read_uvarint(data, pos)
            counts.append(count)
        if pos != len(data):
            raise CodecError("lexicon: trailing bytes")
        return cls(lemmas, counts)

"""Tokenization and dictionary-based lemmatization.

Tokens are maximal runs of letters/digits, lowercased, numbered 0,1,2,...
in text order.  A dictionary maps a surface word to an ordered list of
lemmas; words absent from the dictionary are their own single lemma.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split text into lowercased word tokens with 0-based positions."""
    return [
        Token(m.group(0).lower(), i) for i, m in enumerate(_WORD_RE.finditer(text))
    ]


@dataclass
class Dictionary:
    """Immutable surface-word to lemma-list mapping with identity fallback."""

    entries: dict[str, list[str]] = field(default_factory=dict)

    def lemmas(self, word: str) -> list[str]:
        hit = self.entries.get(word)
        return list(hit) if hit else [word]

    @classmethod
    def load(cls, path: str) -> "Dictionary":
        """Read a dictionary file: ``word<TAB>lemma1,lemma2``, # comments."""
        entries: dict[str, list[str]] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    word, lemma_part = line.split("\t", 1)
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: expected 'word<TAB>lemmas', got {line!r}"
                    ) from None
                lemmas = []
                for lemma in lemma_part.split(","):
                    lemma = lemma.strip()
                    if lemma and lemma not in lemmas:
                        lemmas.append(lemma)
                if not lemmas:
                    raise ValueError(f"{path}:{lineno}: empty lemma list")
                entries[word.strip()] = lemmas
        return cls(entries)


def lemmatize(word: str, dictionary: Dictionary) -> list[str]:
    """Lemma list for a lowercase word; the word itself when unknown."""
    return dictionary.lemmas(word)

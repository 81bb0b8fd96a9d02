"""Occurrence staging tables for subquery evaluation.

``PositionTable`` holds three cyclic fixed-width buffers covering the
position ranges [start, start+w), [start+w, start+2w), [start+2w,
start+3w).  Each buffer slot stores the absolute position and a bitset
of local lemma numbers seen there, plus one occupancy bit in the
buffer's 64-bit mask.  Draining the first buffer by repeatedly taking
the lowest set mask bit yields occurrences already sorted by position.

``LemmaTable`` tracks, per local lemma, how many occurrences the
subquery requires (max) and how many are credited in the current window
(count).  ``FragmentMatcher`` combines it with the processed queue of
consumed occurrences (one entry per text position, holding a lemma
bitset) to detect complete windows, shrink them to minimal fragments,
and reverse credits when old entries are pruned at a buffer switch.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from proxikey.errors import EngineInvariantError


def shift_origin(position: int, max_distance: int) -> int:
    """Window origin for a fresh evaluation window around ``position``."""
    return position - min(position, max_distance)


class LemmaTable:
    """Per-lemma required/credited occurrence accounting."""

    __slots__ = ("max_counts", "counts", "total_max", "total")

    def __init__(self, required: list[int]):
        self.max_counts = list(required)
        self.counts = [0] * len(required)
        self.total_max = sum(required)
        self.total = 0

    def reset(self) -> None:
        self.counts = [0] * len(self.max_counts)
        self.total = 0

    def add(self, lemma: int) -> bool:
        """Credit one occurrence; True when every requirement is met."""
        if self.counts[lemma] < self.max_counts[lemma]:
            self.total += 1
        self.counts[lemma] += 1
        return self.total == self.total_max

    def remove(self, lemma: int) -> None:
        self.counts[lemma] -= 1
        if self.counts[lemma] < self.max_counts[lemma]:
            self.total -= 1

    @property
    def complete(self) -> bool:
        return self.total == self.total_max

    def check_consistency(self) -> None:
        expect = sum(min(c, m) for c, m in zip(self.counts, self.max_counts))
        if expect != self.total:
            raise EngineInvariantError(
                f"lemma table total {self.total} != recomputed {expect}"
            )


@dataclass
class ProcessedEntry:
    pos: int
    mask: int  # bitset of local lemma numbers credited at this position


class FragmentMatcher:
    """Processed-occurrence window with minimal-fragment extraction."""

    def __init__(self, required: list[int]):
        self.table = LemmaTable(required)
        self.processed: deque[ProcessedEntry] = deque()

    def reset(self) -> None:
        self.table.reset()
        self.processed.clear()

    @property
    def empty(self) -> bool:
        return not self.processed

    def add(self, pos: int, lemma: int) -> bool:
        """Consume one occurrence; positions are atomic queue entries."""
        bit = 1 << lemma
        if self.processed and self.processed[-1].pos == pos:
            self.processed[-1].mask |= bit
        else:
            if self.processed and self.processed[-1].pos > pos:
                raise EngineInvariantError("occurrences consumed out of order")
            self.processed.append(ProcessedEntry(pos, bit))
        return self.table.add(lemma)

    def _mask_lemmas(self, mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def _shrink(self) -> None:
        """Drop surplus front positions while the window stays complete."""
        while self.processed:
            front = self.processed[0]
            lemmas = list(self._mask_lemmas(front.mask))
            if all(
                self.table.counts[l] > self.table.max_counts[l] for l in lemmas
            ):
                for l in lemmas:
                    self.table.remove(l)
                self.processed.popleft()
            else:
                break

    def emit(self, end_pos: int, end_mask: int, max_distance: int):
        """Minimal fragment ending at ``end_pos``, or None.

        Call after all occurrences at ``end_pos`` have been added and the
        table is complete.  A fragment is produced only when this position
        actually completes a new window: some lemma occurring here is at
        exactly its required count once the window is shrunk.  Without
        that check a surplus occurrence would re-report the window it
        merely extends.  Fragments wider than 2 * max_distance are
        discarded; the window state is kept either way.
        """
        if not self.table.complete:
            raise EngineInvariantError("emit() called on an incomplete table")
        self._shrink()
        if not self.processed:
            raise EngineInvariantError("complete table with empty window")
        start = self.processed[0].pos
        completing = any(
            self.table.counts[l] == self.table.max_counts[l]
            for l in self._mask_lemmas(end_mask)
        )
        if not completing:
            return None
        if end_pos - start > 2 * max_distance:
            return None
        return (start, end_pos)

    def prune_older_than(self, threshold: int) -> None:
        """Remove entries below ``threshold`` and reverse their credits."""
        while self.processed and self.processed[0].pos < threshold:
            entry = self.processed.popleft()
            for l in self._mask_lemmas(entry.mask):
                self.table.remove(l)


class PositionTable:
    """Three cyclic buffers of (position, lemma bitset) slots."""

    __slots__ = ("window_size", "start", "_masks", "_pos", "_lem")

    def __init__(self, window_size: int, max_distance: int):
        if not 2 * max_distance <= window_size <= 64:
            raise ValueError(
                f"window_size must be in [{2 * max_distance}, 64], "
                f"got {window_size}"
            )
        self.window_size = window_size
        self.start = 0
        self._masks = [0, 0, 0]
        self._pos = [[0] * window_size for _ in range(3)]
        self._lem = [[0] * window_size for _ in range(3)]

    @property
    def flush_border(self) -> int:
        return 3 * self.window_size // 2

    @property
    def occupied(self) -> bool:
        return any(self._masks)

    def shift(self, start: int) -> None:
        """Reposition an empty table so buffer 0 begins at ``start``."""
        self.start = start
        self._masks = [0, 0, 0]

    def set(self, pos: int, lemma: int) -> int:
        """Record an occurrence; returns the buffer index (for tracing)."""
        rel = pos - self.start
        if not 0 <= rel < 3 * self.window_size:
            raise EngineInvariantError(
                f"position {pos} outside buffers [{self.start}, "
                f"{self.start + 3 * self.window_size})"
            )
        buf, slot = divmod(rel, self.window_size)
        if self._masks[buf] >> slot & 1:
            self._lem[buf][slot] |= 1 << lemma
        else:
            self._masks[buf] |= 1 << slot
            self._pos[buf][slot] = pos
            self._lem[buf][slot] = 1 << lemma
        return buf

    def drain_first(self) -> list[tuple[int, int]]:
        """Pop all buffer-0 entries as (position, lemma bitset), ascending.

        Scans the occupancy mask with lowest-set-bit extraction, so the
        result comes out sorted without any explicit sort.
        """
        out: list[tuple[int, int]] = []
        mask = self._masks[0]
        pos_row = self._pos[0]
        lem_row = self._lem[0]
        while mask:
            low = mask & -mask
            slot = low.bit_length() - 1
            out.append((pos_row[slot], lem_row[slot]))
            mask ^= low
        self._masks[0] = 0
        return out

    def drain_records(self) -> list[tuple[int, int]]:
        """Like drain_first but expanded to (position, local lemma) records."""
        records: list[tuple[int, int]] = []
        for pos, mask in self.drain_first():
            while mask:
                low = mask & -mask
                records.append((pos, low.bit_length() - 1))
                mask ^= low
        return records

    def switch(self) -> None:
        """Rotate buffers (first becomes third) and advance the origin."""
        self._masks = [self._masks[1], self._masks[2], self._masks[0]]
        self._pos = [self._pos[1], self._pos[2], self._pos[0]]
        self._lem = [self._lem[1], self._lem[2], self._lem[0]]
        self._masks[2] = 0
        self.start += self.window_size

"""Document-at-a-time subquery evaluation over tri-key posting lists.

Evaluation is a three-level loop.  First all key iterators align on a
common document (min-heap on doc id).  Then anchor positions are pulled
together until the spread between the minimum and maximum anchors is
small enough for the keys' occurrences to possibly share a fragment
(anchors sit within max_distance of every occurrence they produce, and
a fragment spans at most 2 * max_distance, so anchors more than
4 * max_distance apart can never contribute to one fragment).  Finally
the document's postings are streamed through the position table in
window-sized batches: fill up to the flush border, drain the first
buffer into a sorted occurrence queue, feed the lemma table, emit
minimal fragments, and rotate buffers until the document is finished.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from proxikey.errors import QueryClassError
from proxikey.index.core import IndexData, PostingIterator, ReadCounter
from proxikey.lexicon import Lexicon
from proxikey.search.plan import QueryPlan, expand_subqueries, select_keys
from proxikey.search.tables import FragmentMatcher, PositionTable, shift_origin
from proxikey.text import Dictionary


@dataclass(frozen=True, order=True)
class Fragment:
    doc: int
    start: int
    end: int

    @property
    def span(self) -> int:
        return self.end - self.start


@dataclass
class DocResult:
    doc: int
    score: float
    fragments: list[tuple[int, int]]


class TraceSink:
    """Collects evaluation events as formatted text lines."""

    def __init__(self, lemma_name=None):
        self.lines: list[str] = []
        self._name = lemma_name or str

    def _component(self, rank: int, star: bool) -> str:
        return f"{self._name(rank)}*" if star else self._name(rank)

    def shift(self, start: int) -> None:
        self.lines.append(f"Shift Start={start}")

    def read(self, positions, components) -> None:
        key = ", ".join(self._component(r, s) for r, _, s in components)
        p0, p1, p2 = positions
        self.lines.append(f"Read posting ({p0}, {p1}, {p2}) key ({key})")

    def set(self, pos: int, rank: int, buf: int) -> None:
        self.lines.append(f"Set (position {pos}, key {self._name(rank)}), buffer {buf}")

    def populate(self) -> None:
        self.lines.append("Populate Source")

    def fetch(self, pos: int, rank: int) -> None:
        self.lines.append(f"Fetch (position {pos}, key {self._name(rank)})")

    def add(self, rank: int, complete: bool) -> None:
        op = "=" if complete else "!="
        self.lines.append(f"Add (key {self._name(rank)}) Count{op}Max")

    def switch(self, start: int) -> None:
        self.lines.append(f"Buffer switch, Start={start}")

    def result(self, start: int, end: int) -> None:
        self.lines.append(f"Result (from {start}, to {end})")


class _NullTrace:
    def __getattr__(self, name):
        return lambda *args, **kwargs: None


_NULL_TRACE = _NullTrace()


class SubqueryEvaluator:
    """Runs one planned subquery against an index."""

    def __init__(
        self,
        index: IndexData,
        plan: QueryPlan,
        window_size: int | None = None,
        trace: TraceSink | None = None,
        start_override: int | None = None,
        counter: ReadCounter | None = None,
    ):
        self.index = index
        self.plan = plan
        self.max_distance = index.max_distance
        self.window_size = window_size or index.config.window_size
        self.counter = counter or ReadCounter()
        self.trace = trace or _NULL_TRACE
        self._start_override = start_override
        self.table = PositionTable(self.window_size, self.max_distance)
        self.matcher = FragmentMatcher(plan.required_counts())
        # Per key: iterator plus (rank, local lemma, star) per physical component.
        self.iterators: list[PostingIterator] = []
        self.components: list[list[tuple[int, int, bool]]] = []
        for plan_key in plan.keys:
            self.iterators.append(index.tri_iterator(plan_key.key, self.counter))
            self.components.append(
                [(c.lemma, plan.local[c.lemma], c.star) for c in plan_key.physical]
            )
        self._key_coverage = [
            {local for _, local, star in comps if not star}
            for comps in self.components
        ]
        self._all_locals = set(plan.local.values())
        # The anchor-distance gate may only skip postings when every lemma
        # is served by exactly one key; with duplicate lemmas spread over
        # several keys a fragment need not involve every iterator, so no
        # posting can be ruled out by anchor spread alone.
        coverage_count = {local: 0 for local in self._all_locals}
        for covered in self._key_coverage:
            for local in covered:
                coverage_count[local] += 1
        self._gate_enabled = all(n == 1 for n in coverage_count.values())

    def run(self) -> list[Fragment]:
        results: list[Fragment] = []
        for it in self.iterators:
            it.next()
        while True:
            aligned = self._align_documents()
            if aligned is None:
                break
            doc, participants = aligned
            if self._position_gate(doc, participants):
                results.extend(self._eval_doc(doc, participants))
        results.sort()
        return results

    def _align_documents(self) -> tuple[int, list[int]] | None:
        """Next evaluable document and the iterators positioned on it.

        Duplicate lemmas make keys overlap: one key's postings can supply
        occurrences for several query slots of the same lemma, so a key
        with no postings in a document must not veto it.  A document is
        evaluable when the iterators sitting on it jointly have a
        non-starred component for every subquery lemma; otherwise no
        window there can complete and its postings are skipped.
        """
        its = self.iterators
        while True:
            doc = None
            for it in its:
                if not it.exhausted and (doc is None or it.value[0] < doc):
                    doc = it.value[0]
            if doc is None:
                return None
            participants = [
                i for i, it in enumerate(its)
                if not it.exhausted and it.value[0] == doc
            ]
            covered = set()
            for i in participants:
                covered |= self._key_coverage[i]
            if covered == self._all_locals:
                return doc, participants
            for i in participants:
                it = its[i]
                while not it.exhausted and it.value[0] == doc:
                    it.next()

    def _position_gate(self, doc: int, participants: list[int]) -> bool:
        """Pull anchor positions together; False once an iterator leaves doc."""
        if not self._gate_enabled:
            return True
        its = self.iterators
        gate = 4 * self.max_distance
        heap = [(its[i].value[1], i) for i in participants]
        heapq.heapify(heap)
        max_p = max(p for p, _ in heap)
        while max_p - heap[0][0] > gate:
            _, i = heap[0]
            it = its[i]
            if not it.next() or it.value[0] != doc:
                return False
            p = it.value[1]
            heapq.heapreplace(heap, (p, i))
            if p > max_p:
                max_p = p
        return True

    def _on_doc(self, it: PostingIterator, doc: int) -> bool:
        return not it.exhausted and it.value[0] == doc

    def _fill(self, doc: int, participants: list[int]) -> None:
        """Read each participant's postings up to the flush border."""
        table = self.table
        border = table.start + table.flush_border
        for i in participants:
            it = self.iterators[i]
            comps = self.components[i]
            while self._on_doc(it, doc) and it.value[1] < border:
                _, p, d1, d2 = it.value
                positions = (p, p + d1, p + d2)
                self.trace.read(positions, comps)
                for pos, (rank, local, star) in zip(positions, comps):
                    if not star:
                        buf = table.set(pos, local)
                        self.trace.set(pos, rank, buf)
                it.next()

    def _process(self, entries, doc: int, results: list[Fragment]) -> None:
        matcher = self.matcher
        local_rank = {local: rank for rank, local in self.plan.local.items()}
        for pos, mask in entries:
            bits = mask
            while bits:
                low = bits & -bits
                local = low.bit_length() - 1
                bits ^= low
                self.trace.fetch(pos, local_rank[local])
                complete = matcher.add(pos, local)
                self.trace.add(local_rank[local], complete)
            if matcher.table.complete:
                frag = matcher.emit(pos, mask, self.max_distance)
                if frag is not None:
                    results.append(Fragment(doc, frag[0], frag[1]))
                    self.trace.result(frag[0], frag[1])

    def _eval_doc(self, doc: int, participants: list[int]) -> list[Fragment]:
        """Stream the whole document through the tables, window by window."""
        its = self.iterators
        table = self.table
        matcher = self.matcher
        m = self.max_distance
        results: list[Fragment] = []

        p_min = min(its[i].value[1] for i in participants)
        if self._start_override is not None:
            start = self._start_override
            self._start_override = None
        else:
            start = shift_origin(p_min, m)
        table.shift(start)
        matcher.reset()
        self.trace.shift(start)

        while True:
            self._fill(doc, participants)
            entries = table.drain_first()
            self.trace.populate()
            self._process(entries, doc, results)
            active = [its[i] for i in participants if self._on_doc(its[i], doc)]
            if not active and not table.occupied:
                break
            if active and not table.occupied and matcher.empty:
                # Nothing pending and the next postings are beyond the flush
                # border: restart the window at them instead of switching
                # through empty buffers one window at a time.
                next_p = min(it.value[1] for it in active)
                new_start = shift_origin(next_p, m)
                if new_start > table.start:
                    table.shift(new_start)
                    matcher.reset()
                    self.trace.shift(new_start)
                    continue
            matcher.prune_older_than(table.start + table.window_size - 2 * m)
            table.switch()
            self.trace.switch(table.start)
        return results


def search_subquery(
    index: IndexData,
    plan: QueryPlan,
    window_size: int | None = None,
    trace: TraceSink | None = None,
    start_override: int | None = None,
    counter: ReadCounter | None = None,
) -> list[Fragment]:
    """All minimal fragments for one subquery, ascending (doc, start, end)."""
    return SubqueryEvaluator(
        index, plan, window_size, trace, start_override, counter
    ).run()


def score(fragments: list[tuple[int, int]]) -> float:
    """Relevance of one document: sum of 1 / (1 + span)^2 over fragments.

    Placeholder proximity score; pluggable and excluded from the oracle
    equivalence checks.
    """
    return sum(1.0 / (1 + end - start) ** 2 for start, end in fragments)


def search(
    query: str,
    index: IndexData,
    dictionary: Dictionary,
    window_size: int | None = None,
    trace: TraceSink | None = None,
    start_override: int | None = None,
    use_baseline: bool = False,
) -> tuple[list[DocResult], int]:
    """Evaluate a stop-only query; returns ranked results and postings read."""
    subqueries = expand_subqueries(query, dictionary, index.lexicon, index.config)
    counter = ReadCounter()
    fragments: set[Fragment] = set()
    for subquery in subqueries:
        plan = select_keys(subquery)
        if use_baseline:
            from proxikey.index.baseline import baseline_search_subquery

            frags = baseline_search_subquery(index, subquery, plan, counter)
        else:
            frags = search_subquery(
                index, plan, window_size, trace, start_override, counter
            )
        fragments.update(frags)
    by_doc: dict[int, list[tuple[int, int]]] = {}
    for frag in sorted(fragments):
        by_doc.setdefault(frag.doc, []).append((frag.start, frag.end))
    results = [DocResult(doc, score(frags), frags) for doc, frags in by_doc.items()]
    results.sort(key=lambda r: (-r.score, r.doc))
    return results, counter.count

"""Baseline evaluation over the ordinary positional index.

This is the reference strategy an engine without tri-key indexes would
use: merge the subquery lemmas' full positional lists document-at-a-time
and compute fragments from the raw occurrences.  Fragment semantics
match the tri-key engine exactly: per-document occurrences are filtered
to what the subquery's key plan can surface, then minimal windows are
extracted.  What differs is the cost, counted in postings consumed.

Single-lemma subqueries have no key plan; they degenerate to one
zero-length fragment per occurrence.
"""

from __future__ import annotations

from proxikey.index.core import IndexData, ReadCounter
from proxikey.oracle import minimal_window_fragments, oracle_visible_occurrences
from proxikey.search.plan import QueryPlan, Subquery


def baseline_search_subquery(
    index: IndexData,
    subquery: Subquery,
    plan: QueryPlan | None,
    counter: ReadCounter | None = None,
):
    """Fragments for one subquery via the ordinary positional index."""
    from proxikey.search.engine import Fragment

    counter = counter or ReadCounter()
    max_distance = index.max_distance
    lemmas = sorted(set(subquery.lemmas))
    iterators = [index.ordinary_iterator(lemma, counter) for lemma in lemmas]
    states = []
    for it in iterators:
        it.next()
        states.append(it)
    if any(it.exhausted for it in states):
        return []
    if len(subquery) > 1 and plan is None:
        raise ValueError("multi-lemma baseline evaluation requires a key plan")

    results: list[Fragment] = []
    while all(not it.exhausted for it in states):
        doc = max(it.value[0] for it in states)
        aligned = True
        for it in states:
            while not it.exhausted and it.value[0] < doc:
                it.next()
            if it.exhausted:
                return sorted(results)
            if it.value[0] != doc:
                aligned = False
        if not aligned:
            continue
        occurrences: list[tuple[int, int]] = []
        for lemma, it in zip(lemmas, states):
            while not it.exhausted and it.value[0] == doc:
                occurrences.append((it.value[1], lemma))
                it.next()
        occurrences.sort()
        if len(subquery) == 1:
            results.extend(Fragment(doc, p, p) for p, _ in occurrences)
        else:
            visible = oracle_visible_occurrences(occurrences, plan, max_distance)
            for start, end in minimal_window_fragments(
                visible, plan.required_counts(), max_distance
            ):
                results.append(Fragment(doc, start, end))
    return sorted(results)

"""Subquery expansion and greedy key selection.

A query of stop-class words expands into subqueries: one lemma choice
per word, the Cartesian product over each word's stop-lemma
alternatives.  For each subquery we pick tri-keys greedily until every
word slot is covered.  Each key takes the most frequent uncovered slot
first, then twice the least frequent uncovered slot at a fresh word
index.  When no uncovered slot qualifies, the pick ignores the covered
marks and is flagged as a duplicate ("starred"); starred components
still shape the physical key but bind no slot and contribute no
occurrences during evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from proxikey.config import Config
from proxikey.errors import QueryClassError
from proxikey.lexicon import LemmaClass, Lexicon
from proxikey.text import Dictionary, tokenize

MAX_QUERY_WORDS = 16


@dataclass(frozen=True)
class Subquery:
    """One lemma (by rank) per query word, in query order."""

    lemmas: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.lemmas)


@dataclass(frozen=True)
class PlanComponent:
    lemma: int
    star: bool
    slot: int  # query-word index the pick came from

    @property
    def bound_slot(self) -> int | None:
        return None if self.star else self.slot


@dataclass(frozen=True)
class PlanKey:
    selected: tuple[PlanComponent, PlanComponent, PlanComponent]  # pick order
    physical: tuple[PlanComponent, PlanComponent, PlanComponent]  # rank order

    @property
    def key(self) -> tuple[int, int, int]:
        return tuple(c.lemma for c in self.physical)  # type: ignore[return-value]

    def selected_lemmas(self) -> tuple[int, int, int]:
        return tuple(c.lemma for c in self.selected)  # type: ignore[return-value]


@dataclass(frozen=True)
class QueryPlan:
    subquery: Subquery
    keys: tuple[PlanKey, ...]
    local: dict[int, int]  # lemma rank -> local number 0..U-1

    @property
    def distinct_lemmas(self) -> int:
        return len(self.local)

    def required_counts(self) -> list[int]:
        """Occurrences of each local lemma required by the subquery."""
        need = [0] * len(self.local)
        for lemma in self.subquery.lemmas:
            need[self.local[lemma]] += 1
        return need


def expand_subqueries(
    query: str, dictionary: Dictionary, lexicon: Lexicon, cfg: Config
) -> list[Subquery]:
    """Stop-lemma subqueries for a query string.

    Raises QueryClassError when any word has no stop-class lemma; such
    queries belong to other index types and are out of scope here.
    """
    words = [t.surface for t in tokenize(query)]
    if not words:
        raise QueryClassError("empty query")
    if len(words) > MAX_QUERY_WORDS:
        raise QueryClassError(f"query longer than {MAX_QUERY_WORDS} words")
    alternatives: list[list[int]] = []
    for word in words:
        stop_ranks = []
        for lemma in dictionary.lemmas(word):
            rank = lexicon.rank_of(lemma)
            if Lexicon.classify_rank(rank, cfg) is LemmaClass.STOP:
                stop_ranks.append(rank)
        if not stop_ranks:
            raise QueryClassError("query is not stop-only")
        alternatives.append(stop_ranks)
    seen: set[tuple[int, ...]] = set()
    subqueries: list[Subquery] = []
    for combo in itertools.product(*alternatives):
        if combo not in seen:
            seen.add(combo)
            subqueries.append(Subquery(combo))
    return subqueries


def _pick(candidates: list[tuple[int, int]], most_frequent: bool) -> tuple[int, int]:
    """Choose (lemma, slot); frequency first, lowest slot breaks ties."""
    if most_frequent:
        return min(candidates, key=lambda c: (c[0], c[1]))
    return min(candidates, key=lambda c: (-c[0], c[1]))


def select_keys(subquery: Subquery, lexicon: Lexicon | None = None) -> QueryPlan:
    """Greedy key selection covering every subquery slot exactly once.

    Lemmas are identified by rank, so no lexicon access is needed; the
    parameter is accepted for symmetry with the rest of the pipeline.
    """
    slots = list(enumerate(subquery.lemmas))  # (slot, lemma rank)
    if len(slots) < 2:
        raise QueryClassError("unsupported single-lemma stop query")
    uncovered: set[int] = {slot for slot, _ in slots}
    keys: list[PlanKey] = []
    while uncovered:
        first_lemma, first_slot = _pick(
            [(lemma, slot) for slot, lemma in slots if slot in uncovered],
            most_frequent=True,
        )
        components = [PlanComponent(first_lemma, False, first_slot)]
        taken = {first_slot}
        for _ in range(2):
            fresh = [
                (lemma, slot)
                for slot, lemma in slots
                if slot in uncovered and slot not in taken
            ]
            if fresh:
                lemma, slot = _pick(fresh, most_frequent=False)
                components.append(PlanComponent(lemma, False, slot))
            else:
                anywhere = [
                    (lemma, slot) for slot, lemma in slots if slot not in taken
                ]
                if not anywhere:  # two-slot subquery: repeat a used slot
                    anywhere = [(lemma, slot) for slot, lemma in slots]
                lemma, slot = _pick(anywhere, most_frequent=False)
                components.append(PlanComponent(lemma, True, slot))
            taken.add(components[-1].slot)
        uncovered -= {c.slot for c in components if not c.star}
        selected = tuple(components)
        physical = tuple(
            sorted(components, key=lambda c: (c.lemma, c.star, c.slot))
        )
        keys.append(PlanKey(selected, physical))  # type: ignore[arg-type]

    local: dict[int, int] = {}
    for lemma in subquery.lemmas:
        if lemma not in local:
            local[lemma] = len(local)
    if len(local) > 64:
        raise QueryClassError("subquery has more than 64 distinct lemmas")
    plan = QueryPlan(subquery, tuple(keys), local)
    _check_plan(plan)
    return plan


def _check_plan(plan: QueryPlan) -> None:
    bound = [c.bound_slot for k in plan.keys for c in k.selected if not c.star]
    if sorted(bound) != list(range(len(plan.subquery))):
        raise AssertionError(f"plan does not bind every slot exactly once: {bound}")
    for key in plan.keys:
        ranks = [c.lemma for c in key.physical]
        if ranks != sorted(ranks):
            raise AssertionError(f"physical key out of rank order: {ranks}")

"""Brute-force reference implementations for validating index and engine.

Everything here favours clarity over speed and shares no enumeration
code with the index builder or the evaluation engine; it defines ground
truth on desk-scale inputs.  Occurrences are (position, lemma rank)
pairs, sorted, with at most one entry per (position, lemma).
"""

from __future__ import annotations

from proxikey.search.plan import QueryPlan

Occurrence = tuple[int, int]
TriKey = tuple[int, int, int]


def oracle_tri_postings(
    occurrences: list[Occurrence], max_distance: int, doc_id: int = 0
) -> dict[TriKey, list[tuple[int, int, int, int]]]:
    """Every tri-key posting of one document, by direct triple enumeration.

    A triple of occurrences at pairwise distinct positions is ordered by
    (rank, position); the first element anchors the posting and both
    distances from it must lie within max_distance.
    """
    occs = sorted(occurrences)
    n = len(occs)
    out: dict[TriKey, list[tuple[int, int, int, int]]] = {}
    span = 2 * max_distance
    for i in range(n):
        pi = occs[i][0]
        for j in range(i + 1, n):
            if occs[j][0] - pi > span:
                break
            for k in range(j + 1, n):
                if occs[k][0] - pi > span:
                    break
                triple = [occs[i], occs[j], occs[k]]
                positions = {p for p, _ in triple}
                if len(positions) != 3:
                    continue
                ordered = sorted((rank, pos) for pos, rank in triple)
                (fr, fp), (sr, sp), (tr, tp) = ordered
                d1 = sp - fp
                d2 = tp - fp
                if abs(d1) <= max_distance and abs(d2) <= max_distance:
                    out.setdefault((fr, sr, tr), []).append((doc_id, fp, d1, d2))
    for postings in out.values():
        postings.sort()
    return out


def oracle_key_postings(
    by_lemma: dict[int, list[int]], key: TriKey, max_distance: int, doc_id: int = 0
) -> list[tuple[int, int, int, int]]:
    """Postings of a single key, enumerated from per-lemma position lists."""
    f, s, t = key
    out = []
    for pf in by_lemma.get(f, ()):
        for ps in by_lemma.get(s, ()):
            if abs(ps - pf) > max_distance or ps == pf:
                continue
            if f == s and ps < pf:
                continue  # anchor is the earlier occurrence of a repeated lemma
            for pt in by_lemma.get(t, ()):
                if abs(pt - pf) > max_distance or pt == pf or pt == ps:
                    continue
                if s == t and pt < ps:
                    continue
                if f == t and pt < pf:
                    continue
                out.append((doc_id, pf, ps - pf, pt - pf))
    out.sort()
    return out


def _positions_by_lemma(occurrences: list[Occurrence]) -> dict[int, list[int]]:
    by_lemma: dict[int, list[int]] = {}
    for pos, rank in occurrences:
        by_lemma.setdefault(rank, []).append(pos)
    for positions in by_lemma.values():
        positions.sort()
    return by_lemma


def oracle_visible_occurrences(
    occurrences: list[Occurrence], plan: QueryPlan, max_distance: int
) -> list[tuple[int, int]]:
    """(position, local lemma) pairs the plan's keys can surface.

    A position is visible for a lemma when some posting of some plan key
    places a non-starred component with that lemma there.  Starred
    components never surface occurrences.
    """
    by_lemma = _positions_by_lemma(occurrences)
    visible: set[tuple[int, int]] = set()
    for plan_key in plan.keys:
        for _, p, d1, d2 in oracle_key_postings(by_lemma, plan_key.key, max_distance):
            for component, pos in zip(plan_key.physical, (p, p + d1, p + d2)):
                if not component.star:
                    visible.add((pos, plan.local[component.lemma]))
    return sorted(visible)


def minimal_window_fragments(
    visible: list[tuple[int, int]], required: list[int], max_distance: int
) -> list[tuple[int, int]]:
    """Minimal complete windows over a visible-occurrence set.

    For each occupied position E (ascending) the unique left-maximal
    window [s, E] holding every lemma with its required multiplicity is
    computed; it is emitted when it is new (the same-start window was
    not already complete at the previous occupied position) and spans at
    most 2 * max_distance.
    """
    if not visible or not required:
        return []
    by_pos: dict[int, list[int]] = {}
    for pos, lemma in visible:
        by_pos.setdefault(pos, []).append(lemma)
    positions = sorted(by_pos)

    def complete_in(lo: int, hi: int) -> bool:
        counts = [0] * len(required)
        for p in positions:
            if lo <= p <= hi:
                for lemma in by_pos[p]:
                    counts[lemma] += 1
        return all(c >= r for c, r in zip(counts, required))

    def left_maximal(end: int) -> int | None:
        counts = [0] * len(required)
        missing = sum(required)
        for p in reversed(positions):
            if p > end:
                continue
            for lemma in by_pos[p]:
                if counts[lemma] < required[lemma]:
                    missing -= 1
                counts[lemma] += 1
            if missing == 0:
                return p
        return None

    fragments: list[tuple[int, int]] = []
    for idx, end in enumerate(positions):
        start = left_maximal(end)
        if start is None:
            continue
        if idx > 0 and complete_in(start, positions[idx - 1]):
            continue  # the window existed before this endpoint
        if end - start <= 2 * max_distance:
            fragments.append((start, end))
    return fragments


def oracle_fragments(
    occurrences: list[Occurrence], plan: QueryPlan, max_distance: int
) -> list[tuple[int, int]]:
    """Ground-truth fragments of one document for a planned subquery."""
    visible = oracle_visible_occurrences(occurrences, plan, max_distance)
    return minimal_window_fragments(visible, plan.required_counts(), max_distance)

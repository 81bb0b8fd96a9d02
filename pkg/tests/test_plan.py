import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxikey.config import Config
from proxikey.errors import QueryClassError
from proxikey.search.plan import Subquery, expand_subqueries, select_keys

# Frequency ranks for the eleven-word key-selection vector.
FL = {"and": 28, "you": 47, "what": 132, "do": 154, "say": 165, "are": 268,
      "who": 293, "why": 528}
ELEVEN = ["who", "are", "you", "and", "why", "do", "you", "say", "what", "you", "do"]


def named_plan(plan, names):
    inverse = {rank: name for name, rank in names.items()}
    keys = []
    for key in plan.keys:
        keys.append(
            tuple(
                inverse[c.lemma] + ("*" if c.star else "") for c in key.selected
            )
        )
    return keys


class TestSelectKeys:
    def test_eleven_word_vector(self):
        sub = Subquery(tuple(FL[w] for w in ELEVEN))
        plan = select_keys(sub)
        assert named_plan(plan, FL) == [
            ("and", "why", "who"),
            ("you", "are", "say"),
            ("what", "do", "why*"),
        ]
        stars = [c.star for key in plan.keys for c in key.selected]
        assert stars.count(True) == 1

    def test_four_word_vector(self):
        # ranks: i=0, you=1, need=5, who=6
        names = {"i": 0, "you": 1, "need": 5, "who": 6}
        sub = Subquery((names["who"], names["i"], names["need"], names["you"]))
        plan = select_keys(sub)
        assert named_plan(plan, names) == [("i", "who", "need"), ("you", "who*", "need*")]
        assert [k.key for k in plan.keys] == [(0, 5, 6), (1, 5, 6)]
        assert [tuple(c.star for c in k.physical) for k in plan.keys] == [
            (False, False, False),
            (False, True, True),
        ]

    def test_two_distinct_lemmas_star_least_frequent(self):
        plan = select_keys(Subquery((0, 1)))
        (key,) = plan.keys
        assert [(c.lemma, c.star) for c in key.selected] == [
            (0, False),
            (1, False),
            (1, True),
        ]
        assert key.key == (0, 1, 1)

    def test_repeated_lemma_pair(self):
        plan = select_keys(Subquery((4, 4)))
        (key,) = plan.keys
        assert key.key == (4, 4, 4)
        assert sorted(c.bound_slot for c in key.selected if not c.star) == [0, 1]

    def test_single_slot_rejected(self):
        with pytest.raises(QueryClassError, match="single-lemma"):
            select_keys(Subquery((3,)))

    def test_local_numbering_by_first_occurrence(self):
        plan = select_keys(Subquery((9, 2, 9, 5)))
        assert plan.local == {9: 0, 2: 1, 5: 2}
        assert plan.required_counts() == [2, 1, 1]

    @given(
        st.lists(st.integers(min_value=0, max_value=9), min_size=2, max_size=8)
    )
    @settings(max_examples=200)
    def test_every_slot_bound_exactly_once(self, lemmas):
        plan = select_keys(Subquery(tuple(lemmas)))
        bound = sorted(
            c.bound_slot for key in plan.keys for c in key.selected if not c.star
        )
        assert bound == list(range(len(lemmas)))
        for key in plan.keys:
            ranks = [c.lemma for c in key.physical]
            assert ranks == sorted(ranks)
            non_star_slots = [c.slot for c in key.selected if not c.star]
            assert len(set(non_star_slots)) == len(non_star_slots)


class TestExpandSubqueries:
    def test_album_query_two_subqueries(self, band_index, band_dictionary):
        subs = expand_subqueries(
            "who are you who", band_dictionary, band_index.lexicon,
            band_index.config,
        )
        lex = band_index.lexicon
        as_words = [
            tuple(lex.lemma_of(rank) for rank in sub.lemmas) for sub in subs
        ]
        assert as_words == [
            ("who", "are", "you", "who"),
            ("who", "be", "you", "who"),
        ]

    def test_no_alternatives(self, band_index, band_dictionary):
        subs = expand_subqueries(
            "who who", band_dictionary, band_index.lexicon, band_index.config
        )
        assert len(subs) == 1

    def test_product_cardinality(self):
        from proxikey.index.build import build_index_data
        from proxikey.text import Dictionary

        d = Dictionary({"w0": ["a", "b"], "w1": ["c", "d"], "w2": ["e", "f"]})
        corpus = [("d.txt", "w0 w1 w2 a b c d e f")]
        index = build_index_data(corpus, d, Config())
        subs = expand_subqueries("w0 w1 w2", d, index.lexicon, index.config)
        assert len(subs) == 8

    def test_duplicate_subqueries_removed(self):
        from proxikey.index.build import build_index_data
        from proxikey.text import Dictionary

        d = Dictionary({"w0": ["a", "b"], "w1": ["a", "b"]})
        corpus = [("d.txt", "w0 w1 a b")]
        index = build_index_data(corpus, d, Config())
        subs = expand_subqueries("w0 w1", d, index.lexicon, index.config)
        assert len(subs) == 4  # aa ab ba bb are all distinct tuples
        assert len({s.lemmas for s in subs}) == 4

    def test_non_stop_word_rejected(self, band_index, band_dictionary):
        cfg = Config(max_distance=5, sw_count=2, fu_count=0)
        with pytest.raises(QueryClassError, match="not stop-only"):
            expand_subqueries("album by", band_dictionary, band_index.lexicon, cfg)

    def test_unknown_word_rejected(self, band_index, band_dictionary):
        with pytest.raises(QueryClassError, match="not stop-only"):
            expand_subqueries(
                "zzzz who", band_dictionary, band_index.lexicon, band_index.config
            )

    def test_empty_query_rejected(self, band_index, band_dictionary):
        with pytest.raises(QueryClassError):
            expand_subqueries(
                "  ...  ", band_dictionary, band_index.lexicon, band_index.config
            )

    def test_overlong_query_rejected(self, band_index, band_dictionary):
        query = " ".join(["who"] * 17)
        with pytest.raises(QueryClassError, match="16"):
            expand_subqueries(
                query, band_dictionary, band_index.lexicon, band_index.config
            )


def test_selection_is_deterministic():
    rng = random.Random(5)
    for _ in range(50):
        lemmas = tuple(rng.choices(range(6), k=rng.randint(2, 8)))
        first = select_keys(Subquery(lemmas))
        second = select_keys(Subquery(lemmas))
        assert first == second

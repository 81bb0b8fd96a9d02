import pytest
from hypothesis import given
from hypothesis import strategies as st

from proxikey.config import Config
from proxikey.errors import CodecError
from proxikey.lexicon import LemmaClass, Lexicon


def test_rank_ties_break_lexicographically():
    lex = Lexicon.from_counts({"a": 10, "b": 5, "c": 5})
    assert lex.rank == {"a": 0, "b": 1, "c": 2}


def test_singleton():
    lex = Lexicon.from_counts({"x": 1})
    assert lex.rank == {"x": 0}
    assert lex.count_of("x") == 1


def test_empty_counts_rejected():
    with pytest.raises(ValueError, match="empty lexicon"):
        Lexicon.from_counts({})


def test_you_outranks_who_on_band_corpus(band_index):
    lex = band_index.lexicon
    assert lex.rank_of("you") < lex.rank_of("who")


def test_classify_boundaries():
    cfg = Config(sw_count=700, fu_count=2100)
    assert Lexicon.classify_rank(0, cfg) is LemmaClass.STOP
    assert Lexicon.classify_rank(699, cfg) is LemmaClass.STOP
    assert Lexicon.classify_rank(700, cfg) is LemmaClass.FREQUENT
    assert Lexicon.classify_rank(2799, cfg) is LemmaClass.FREQUENT
    assert Lexicon.classify_rank(2800, cfg) is LemmaClass.ORDINARY


def test_classify_unknown_is_ordinary():
    lex = Lexicon.from_counts({"a": 1})
    assert lex.classify("nope", Config()) is LemmaClass.ORDINARY


def test_compare_total_order():
    lex = Lexicon.from_counts({"you": 9, "who": 3, "the": 5})
    assert lex.compare("you", "who") == -1
    assert lex.compare("who", "you") == 1
    assert lex.compare("who", "who") == 0


@given(
    st.dictionaries(
        st.text(alphabet="abcdefg", min_size=1, max_size=4),
        st.integers(min_value=0, max_value=50),
        min_size=1,
        max_size=12,
    )
)
def test_rank_is_dense_and_count_ordered(counts):
    lex = Lexicon.from_counts(counts)
    assert sorted(lex.rank.values()) == list(range(len(counts)))
    for a in counts:
        for b in counts:
            if counts[a] > counts[b]:
                assert lex.rank_of(a) < lex.rank_of(b)


def test_round_trip_bytes():
    lex = Lexicon.from_counts({"who": 5, "be": 4, "ü": 2})
    again = Lexicon.from_bytes(lex.to_bytes())
    assert again.lemmas == lex.lemmas
    assert again.counts == lex.counts


def test_truncated_bytes_rejected():
    data = Lexicon.from_counts({"who": 5, "be": 4}).to_bytes()
    with pytest.raises(CodecError):
        Lexicon.from_bytes(data[:-1])
    with pytest.raises(CodecError):
        Lexicon.from_bytes(b"XXXX" + data[4:])

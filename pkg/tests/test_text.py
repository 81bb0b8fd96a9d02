import pytest
from hypothesis import given
from hypothesis import strategies as st

from proxikey.text import Dictionary, Token, lemmatize, tokenize


def surfaces(text):
    return [t.surface for t in tokenize(text)]


def test_tokenize_album_sentence():
    tokens = tokenize("Who are you is the album by The Who.")
    assert [t.surface for t in tokens] == [
        "who", "are", "you", "is", "the", "album", "by", "the", "who",
    ]
    assert [t.position for t in tokens] == list(range(9))


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_separators():
    assert tokenize("a--b  C") == [Token("a", 0), Token("b", 1), Token("c", 2)]


def test_tokenize_digits_kept():
    assert surfaces("track 7b") == ["track", "7b"]


def test_dictionary_lookup_and_fallback():
    d = Dictionary({"are": ["are", "be"], "has": ["have"]})
    assert lemmatize("are", d) == ["are", "be"]
    assert lemmatize("has", d) == ["have"]
    assert lemmatize("xyzzy", d) == ["xyzzy"]


def test_dictionary_load(tmp_path):
    path = tmp_path / "d.dict"
    path.write_text(
        "# comment\n\nare\tare,be\nhas\thave\ndup\tx,x,y\n", encoding="utf-8"
    )
    d = Dictionary.load(str(path))
    assert d.lemmas("are") == ["are", "be"]
    assert d.lemmas("dup") == ["x", "y"]


def test_dictionary_load_bad_line(tmp_path):
    path = tmp_path / "d.dict"
    path.write_text("nodelimiter\n", encoding="utf-8")
    with pytest.raises(ValueError):
        Dictionary.load(str(path))


@given(st.text(max_size=200))
def test_tokenize_fixed_point(text):
    tokens = tokenize(text)
    rejoined = " ".join(t.surface for t in tokens)
    assert tokenize(rejoined) == tokens


@given(st.text(alphabet=st.characters(), max_size=30))
def test_lemmatize_total(word):
    d = Dictionary()
    for token in tokenize(word):
        assert lemmatize(token.surface, d)

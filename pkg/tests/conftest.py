import os
import random

import pytest

from proxikey.config import Config
from proxikey.index.build import build_index_data, doc_lemma_occurrences
from proxikey.text import Dictionary, tokenize

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

BAND_CORPUS_DIR = os.path.join(FIXTURES, "band_corpus")
BAND_DICT = os.path.join(FIXTURES, "band.dict")
SONGBOOK_CORPUS_DIR = os.path.join(FIXTURES, "songbook_corpus")
SONGBOOK_DICT = os.path.join(FIXTURES, "songbook.dict")


def read_corpus(directory):
    corpus = []
    for name in sorted(os.listdir(directory)):
        if name.endswith(".txt"):
            with open(os.path.join(directory, name), encoding="utf-8") as fh:
                corpus.append((name, fh.read()))
    return corpus


@pytest.fixture(scope="session")
def band_dictionary():
    return Dictionary.load(BAND_DICT)


@pytest.fixture(scope="session")
def band_index(band_dictionary):
    cfg = Config(max_distance=5)
    return build_index_data(read_corpus(BAND_CORPUS_DIR), band_dictionary, cfg)


@pytest.fixture(scope="session")
def songbook_dictionary():
    return Dictionary.load(SONGBOOK_DICT)


@pytest.fixture(scope="session")
def songbook_index(songbook_dictionary):
    cfg = Config(max_distance=7, window_size=14)
    return build_index_data(
        read_corpus(SONGBOOK_CORPUS_DIR), songbook_dictionary, cfg
    )


def stop_occurrences(text, dictionary, index):
    """Sorted (position, rank) stop-lemma occurrences of one document."""
    occs = doc_lemma_occurrences(tokenize(text), dictionary, index.lexicon)
    sw = index.config.sw_count
    return sorted(oc for oc in occs if oc[1] < sw)


def random_case(rng: random.Random, max_vocab=12, max_docs=6, max_tokens=60):
    """One randomized corpus + dictionary + config for equivalence tests."""
    vocab = rng.randint(2, max_vocab)
    lemmas = [f"l{i:02d}" for i in range(vocab)]
    entries = {}
    for h in range(rng.randint(0, 3)):
        if vocab >= 2:
            entries[f"h{h}"] = rng.sample(lemmas, 2)
    dictionary = Dictionary(entries)
    surfaces = lemmas + sorted(entries)
    exponent = rng.uniform(0.6, 1.6)
    weights = [1.0 / (i + 1) ** exponent for i in range(len(surfaces))]
    corpus = []
    for doc in range(rng.randint(1, max_docs)):
        k = rng.randint(2, max_tokens)
        corpus.append(
            (f"d{doc}.txt", " ".join(rng.choices(surfaces, weights=weights, k=k)))
        )
    max_distance = rng.choice([3, 5, 7])
    cfg = Config(max_distance=max_distance, sw_count=100, window_size=64)
    return corpus, dictionary, cfg

"""Proximity full-text search over three-component key inverted indexes.

High-frequency ("stop") lemmas make positional phrase/proximity queries
expensive with an ordinary inverted index.  This package builds an
additional index keyed by ordered triples of stop lemmas, where each
posting records one anchored co-occurrence ``(doc, position, d1, d2)``,
and evaluates multi-word stop-lemma queries document-at-a-time against
those short lists.  A brute-force oracle and a baseline evaluation over
the ordinary positional index are included for verification.
"""

from proxikey.config import Config
from proxikey.index.build import build_index_data
from proxikey.index.io import load_index, save_index
from proxikey.search.engine import Fragment, search, search_subquery

__version__ = "0.1.0"

__all__ = [
    "Config",
    "Fragment",
    "build_index_data",
    "load_index",
    "save_index",
    "search",
    "search_subquery",
    "__version__",
]

from proxikey.index.build import build_index_data, enumerate_tri_postings
from proxikey.index.core import DocInfo, IndexData, PostingIterator, ReadCounter
from proxikey.index.io import load_index, save_index

__all__ = [
    "DocInfo",
    "IndexData",
    "PostingIterator",
    "ReadCounter",
    "build_index_data",
    "enumerate_tri_postings",
    "load_index",
    "save_index",
]

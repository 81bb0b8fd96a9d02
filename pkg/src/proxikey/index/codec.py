"""Posting-block encoding.

Tri-key postings are (doc, p, d1, d2) tuples in strictly increasing
(doc, p, d1, d2) order; ordinary postings are (doc, p) in strictly
increasing (doc, p) order.  Blocks are delta coded: the doc id is a
delta against the previous posting, and p restarts as an absolute value
whenever the doc changes (otherwise it is a delta too, which may be 0
for tri postings sharing an anchor).  d1/d2 are signed and stored as
zigzag varints.  Each block is self-contained, so lists can be chunked.
"""

from __future__ import annotations

from proxikey.errors import CodecError
from proxikey.varint import read_svarint, read_uvarint, write_svarint, write_uvarint

TriPosting = tuple[int, int, int, int]
OrdinaryPosting = tuple[int, int]


def encode_tri_block(postings: list[TriPosting]) -> bytes:
    out = bytearray()
    write_uvarint(out, len(postings))
    prev = (-1, 0, 0, 0)
    for posting in postings:
        if posting <= prev:
            raise ValueError(f"postings not strictly increasing at {posting}")
        doc, p, d1, d2 = posting
        doc_delta = doc - prev[0] if prev[0] >= 0 else doc
        write_uvarint(out, doc_delta)
        write_uvarint(out, p if doc_delta else p - prev[1])
        write_svarint(out, d1)
        write_svarint(out, d2)
        prev = posting
    return bytes(out)


def decode_tri_block(data: bytes) -> list[TriPosting]:
    count, pos = read_uvarint(data, 0)
    postings: list[TriPosting] = []
    doc = -1
    p = 0
    for _ in range(count):
        doc_delta, pos = read_uvarint(data, pos)
        p_field, pos = read_uvarint(data, pos)
        d1, pos = read_svarint(data, pos)
        d2, pos = read_svarint(data, pos)
        if doc < 0:
            doc, p = doc_delta, p_field
        elif doc_delta:
            doc, p = doc + doc_delta, p_field
        else:
            p += p_field
        postings.append((doc, p, d1, d2))
    if pos != len(data):
        raise CodecError(f"tri block: {len(data) - pos} trailing bytes")
    return postings


def encode_ordinary_block(postings: list[OrdinaryPosting]) -> bytes:
    out = bytearray()
    write_uvarint(out, len(postings))
    prev_doc = -1
    prev_p = 0
    for posting in postings:
        doc, p = posting
        if (doc, p) <= (prev_doc, prev_p):
            raise ValueError(f"postings not strictly increasing at {posting}")
        doc_delta = doc - prev_doc if prev_doc >= 0 else doc
        write_uvarint(out, doc_delta)
        write_uvarint(out, p if doc_delta else p - prev_p)
        prev_doc, prev_p = doc, p
    return bytes(out)


def decode_ordinary_block(data: bytes) -> list[OrdinaryPosting]:
    count, pos = read_uvarint(data, 0)
    postings: list[OrdinaryPosting] = []
    doc = -1
    p = 0
    for _ in range(count):
        doc_delta, pos = read_uvarint(data, pos)
        p_field, pos = read_uvarint(data, pos)
        if doc < 0:
            doc, p = doc_delta, p_field
        elif doc_delta:
            doc, p = doc + doc_delta, p_field
        else:
            p += p_field
        postings.append((doc, p))
    if pos != len(data):
        raise CodecError(f"ordinary block: {len(data) - pos} trailing bytes")
    return postings

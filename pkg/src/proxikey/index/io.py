"""Index persistence.

Directory layout: ``meta`` (JSON config + document table), ``lexicon.fl``,
``ordinary.idx``, ``trikey.cat``, ``trikey.idx``.  All integers in the
binary files are little-endian; variable-length integers are base-128
with a continuation bit and signed values are zigzag mapped.  Each binary
file carries a magic, a format version, and a section tag; tags 5 and 6
are reserved for future pair-key and annotated-ordinary sections so the
layout will not break if those are added.

Building twice from the same inputs produces byte-identical files.
"""

from __future__ import annotations

import json
import os
import struct

from proxikey.config import Config
from proxikey.errors import CodecError
from proxikey.index.codec import (
    decode_ordinary_block,
    encode_ordinary_block,
    encode_tri_block,
)
from proxikey.index.core import DocInfo, IndexData
from proxikey.lexicon import Lexicon

FORMAT_VERSION = 1
ORDINARY_CHUNK = 4096

SECTION_TAGS = {
    "lexicon": 1,
    "ordinary": 2,
    "trikey_catalog": 3,
    "trikey_postings": 4,
    # Reserved for index sections defined by other query classes.
    "reserved_pair_key": 5,
    "reserved_annotated_ordinary": 6,
}

ORDINARY_MAGIC = b"PKOR"
TRICAT_MAGIC = b"PKTC"
TRIIDX_MAGIC = b"PKTI"

_CAT_RECORD = struct.Struct("<IIIIQI")  # f, s, t, n_postings, offset, length

META_NAME = "meta"
LEXICON_NAME = "lexicon.fl"
ORDINARY_NAME = "ordinary.idx"
TRICAT_NAME = "trikey.cat"
TRIIDX_NAME = "trikey.idx"


def _header(magic: bytes, tag: int) -> bytes:
    return magic + bytes((FORMAT_VERSION, tag))


def _check_header(data: bytes, magic: bytes, tag: int, name: str) -> int:
    if data[:4] != magic:
        raise CodecError(f"{name}: bad magic")
    if len(data) < 6 or data[4] != FORMAT_VERSION:
        raise CodecError(f"{name}: unsupported format version")
    if data[5] != tag:
        raise CodecError(f"{name}: unexpected section tag {data[5]}")
    return 6


def _encode_ordinary_file(ordinary: dict[int, list[tuple[int, int]]]) -> bytes:
    from proxikey.varint import write_uvarint

    out = bytearray(_header(ORDINARY_MAGIC, SECTION_TAGS["ordinary"]))
    write_uvarint(out, len(ordinary))
    for lemma in sorted(ordinary):
        postings = ordinary[lemma]
        blocks = [
            encode_ordinary_block(postings[i : i + ORDINARY_CHUNK])
            for i in range(0, len(postings), ORDINARY_CHUNK)
        ]
        write_uvarint(out, lemma)
        write_uvarint(out, len(postings))
        write_uvarint(out, len(blocks))
        for block in blocks:
            write_uvarint(out, len(block))
            out += block
    return bytes(out)


def _decode_ordinary_file(data: bytes) -> dict[int, list[tuple[int, int]]]:
    from proxikey.varint import read_uvarint

    pos = _check_header(data, ORDINARY_MAGIC, SECTION_TAGS["ordinary"], ORDINARY_NAME)
    n_lists, pos = read_uvarint(data, pos)
    ordinary: dict[int, list[tuple[int, int]]] = {}
    for _ in range(n_lists):
        lemma, pos = read_uvarint(data, pos)
        n_postings, pos = read_uvarint(data, pos)
        n_blocks, pos = read_uvarint(data, pos)
        postings: list[tuple[int, int]] = []
        for _ in range(n_blocks):
            size, pos = read_uvarint(data, pos)
            if pos + size > len(data):
                raise CodecError(f"ordinary list {lemma}: truncated block")
            postings.extend(decode_ordinary_block(data[pos : pos + size]))
            pos += size
        if len(postings) != n_postings:
            raise CodecError(
                f"ordinary list {lemma}: expected {n_postings} postings, "
                f"got {len(postings)}"
            )
        ordinary[lemma] = postings
    if pos != len(data):
        raise CodecError("ordinary.idx: trailing bytes")
    return ordinary


def save_index(index: IndexData, directory: str) -> dict:
    """Persist an index; returns a summary with sizes for reporting."""
    os.makedirs(directory, exist_ok=True)

    meta = {
        "format_version": FORMAT_VERSION,
        "max_distance": index.config.max_distance,
        "sw_count": index.config.sw_count,
        "fu_count": index.config.fu_count,
        "docs": [{"name": d.name, "tokens": d.tokens} for d in index.docs],
        "sections": SECTION_TAGS,
        "corpus_dir": index.corpus_dir,
        "dictionary_path": index.dictionary_path,
    }
    meta_bytes = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode(
        "utf-8"
    )

    lexicon_bytes = index.lexicon.to_bytes()
    ordinary_bytes = _encode_ordinary_file(index.ordinary)

    cat = bytearray(_header(TRICAT_MAGIC, SECTION_TAGS["trikey_catalog"]))
    idx = bytearray(_header(TRIIDX_MAGIC, SECTION_TAGS["trikey_postings"]))
    keys = index.tri_keys()
    from proxikey.varint import write_uvarint

    write_uvarint(cat, len(keys))
    data_start = len(idx)
    n_postings_total = 0
    for key in keys:
        postings = index.tri_postings(key)
        block = encode_tri_block(postings)
        offset = len(idx) - data_start
        cat += _CAT_RECORD.pack(*key, len(postings), offset, len(block))
        idx += block
        n_postings_total += len(postings)

    files = {
        META_NAME: meta_bytes,
        LEXICON_NAME: lexicon_bytes,
        ORDINARY_NAME: ordinary_bytes,
        TRICAT_NAME: bytes(cat),
        TRIIDX_NAME: bytes(idx),
    }
    for name, data in files.items():
        with open(os.path.join(directory, name), "wb") as fh:
            fh.write(data)
    return {
        "docs": len(index.docs),
        "tokens": sum(d.tokens for d in index.docs),
        "trikeys": len(keys),
        "tri_postings": n_postings_total,
        "bytes": sum(len(d) for d in files.values()),
    }


def load_index(directory: str) -> IndexData:
    """Load a persisted index; tri-key blocks decode lazily on first use."""

    def read(name: str) -> bytes:
        path = os.path.join(directory, name)
        try:
            with open(path, "rb") as fh:
                return fh.read()
        except OSError as exc:
            raise CodecError(f"cannot read index file {path}: {exc}") from exc

    from proxikey.varint import read_uvarint

    meta = json.loads(read(META_NAME).decode("utf-8"))
    if meta.get("format_version") != FORMAT_VERSION:
        raise CodecError("meta: unsupported format version")
    cfg = Config(
        max_distance=meta["max_distance"],
        sw_count=meta["sw_count"],
        fu_count=meta["fu_count"],
    )
    lexicon = Lexicon.from_bytes(read(LEXICON_NAME))
    ordinary = _decode_ordinary_file(read(ORDINARY_NAME))

    cat_data = read(TRICAT_NAME)
    pos = _check_header(
        cat_data, TRICAT_MAGIC, SECTION_TAGS["trikey_catalog"], TRICAT_NAME
    )
    n_keys, pos = read_uvarint(cat_data, pos)
    idx_data = read(TRIIDX_NAME)
    data_start = _check_header(
        idx_data, TRIIDX_MAGIC, SECTION_TAGS["trikey_postings"], TRIIDX_NAME
    )

    tri_raw: dict[tuple[int, int, int], tuple[bytes, int, int]] = {}
    prev_key = None
    for _ in range(n_keys):
        if pos + _CAT_RECORD.size > len(cat_data):
            raise CodecError("trikey.cat: truncated record")
        f, s, t, n_postings, offset, length = _CAT_RECORD.unpack_from(cat_data, pos)
        pos += _CAT_RECORD.size
        key = (f, s, t)
        if prev_key is not None and key <= prev_key:
            raise CodecError(f"trikey.cat: keys out of order at {key}")
        prev_key = key
        begin = data_start + offset
        if begin + length > len(idx_data):
            raise CodecError(f"trikey {key}: block beyond end of trikey.idx")
        tri_raw[key] = (idx_data[begin : begin + length], offset, n_postings)
    if pos != len(cat_data):
        raise CodecError("trikey.cat: trailing bytes")

    return IndexData(
        config=cfg,
        lexicon=lexicon,
        docs=[DocInfo(d["name"], d["tokens"]) for d in meta["docs"]],
        ordinary=ordinary,
        tri={},
        corpus_dir=meta.get("corpus_dir"),
        dictionary_path=meta.get("dictionary_path"),
        tri_raw=tri_raw,
    )

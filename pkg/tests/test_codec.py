import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from proxikey.errors import CodecError
from proxikey.index.codec import (
    decode_ordinary_block,
    decode_tri_block,
    encode_ordinary_block,
    encode_tri_block,
)
from proxikey.varint import read_svarint, read_uvarint, write_svarint, write_uvarint

WORKED_BE_WHO_WHO = [
    (0, 3, -3, 5),
    (1, 4, -4, -1),
    (1, 4, -4, 2),
    (1, 4, -1, 2),
    (1, 7, -4, -1),
]


@pytest.mark.parametrize("value", [0, 1, 127, 128, 300, 2**32, 2**63 - 1])
def test_uvarint_round_trip(value):
    out = bytearray()
    write_uvarint(out, value)
    got, pos = read_uvarint(bytes(out), 0)
    assert (got, pos) == (value, len(out))


def test_uvarint_negative_rejected():
    with pytest.raises(ValueError):
        write_uvarint(bytearray(), -1)


def test_uvarint_truncated():
    out = bytearray()
    write_uvarint(out, 10_000)
    with pytest.raises(CodecError):
        read_uvarint(bytes(out[:-1]), 0)


@pytest.mark.parametrize("value", [0, -1, 1, -2, 2, -64, 63, 10**9, -(10**9)])
def test_svarint_round_trip(value):
    out = bytearray()
    write_svarint(out, value)
    got, _ = read_svarint(bytes(out), 0)
    assert got == value


def test_tri_block_empty():
    assert decode_tri_block(encode_tri_block([])) == []


def test_tri_block_worked_records():
    block = encode_tri_block(WORKED_BE_WHO_WHO)
    assert decode_tri_block(block) == WORKED_BE_WHO_WHO


def test_tri_block_rejects_unsorted():
    with pytest.raises(ValueError):
        encode_tri_block([(0, 3, 1, 2), (0, 3, 1, 2)])
    with pytest.raises(ValueError):
        encode_tri_block([(1, 0, 1, 2), (0, 0, 1, 2)])


def test_tri_block_truncated():
    block = encode_tri_block(WORKED_BE_WHO_WHO)
    with pytest.raises(CodecError):
        decode_tri_block(block[:-1])


def test_tri_block_trailing_bytes():
    block = encode_tri_block(WORKED_BE_WHO_WHO)
    with pytest.raises(CodecError):
        decode_tri_block(block + b"\x00")


def random_tri_postings(rng, n, max_distance=7):
    postings = set()
    while len(postings) < n:
        doc = rng.randrange(0, 500)
        p = rng.randrange(0, 5000)
        d1 = rng.choice([-1, 1]) * rng.randint(1, max_distance)
        d2 = rng.choice([-1, 1]) * rng.randint(1, max_distance)
        if d1 != d2:
            postings.add((doc, p, d1, d2))
    return sorted(postings)


def test_tri_block_random_round_trip():
    postings = random_tri_postings(random.Random(7), 10_000)
    assert decode_tri_block(encode_tri_block(postings)) == postings


def test_ordinary_block_round_trip():
    postings = [(0, 0), (0, 1), (0, 9), (2, 0), (2, 2), (5, 100)]
    assert decode_ordinary_block(encode_ordinary_block(postings)) == postings
    assert decode_ordinary_block(encode_ordinary_block([])) == []


@given(
    st.sets(
        st.tuples(
            st.integers(min_value=0, max_value=50),
            st.integers(min_value=0, max_value=500),
        ),
        max_size=60,
    )
)
def test_ordinary_block_property(postings):
    ordered = sorted(postings)
    assert decode_ordinary_block(encode_ordinary_block(ordered)) == ordered

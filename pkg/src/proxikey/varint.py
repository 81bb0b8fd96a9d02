"""Base-128 variable-length integers and zigzag mapping for signed values.

Encoding is little-endian groups of 7 bits; the high bit of each byte is
the continuation flag (1 = more bytes follow).  Signed values are zigzag
mapped onto unsigned ones before encoding: 0,-1,1,-2,... -> 0,1,2,3,...
"""

from __future__ import annotations

from proxikey.errors import CodecError


def write_uvarint(out: bytearray, value: int) -> None:
    if value < 0:
        raise ValueError(f"uvarint value must be non-negative, got {value}")
    while value >= 0x80:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    out.append(value)


def read_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    """Decode one unsigned varint starting at ``pos``; return (value, next pos)."""
    result = 0
    shift = 0
    n = len(data)
    while True:
        if pos >= n:
            raise CodecError(f"truncated varint at offset {pos}")
        byte = data[pos]
        pos += 1
        result |= (byte & 0x7F) << shift
        if byte < 0x80:
            return result, pos
        shift += 7
        if shift > 63:
            raise CodecError(f"varint too long at offset {pos}")


def zigzag(value: int) -> int:
    return (value << 1) ^ (value >> 63) if value >= 0 else ((-value) << 1) - 1


def unzigzag(value: int) -> int:
    return (value >> 1) ^ -(value & 1)


def write_svarint(out: bytearray, value: int) -> None:
    write_uvarint(out, zigzag(value))


def read_svarint(data: bytes, pos: int) -> tuple[int, int]:
    value, pos = read_uvarint(data, pos)
    return unzigzag(value), pos

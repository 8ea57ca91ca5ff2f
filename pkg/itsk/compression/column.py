"""Compressed timestamp column module.

A column is delta encoded, zigzagged and bit packed in blocks of
BLOCK_SIZE entries. Entry 0 is ts[0] - base (always 0) and entry i > 0 is
ts[i] - ts[i - 1], so block k holds the rows k * BLOCK_SIZE onwards and can
be decompressed alone once its first value is known (the store keeps it in
the sparse index).

Serialized layout, little-endian::

    magic (1) | version (1) | total_count (8) | base (8)
    then per block: count - 1 (1) | bit_width (1) | payload
"""

import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

from itsk.constants import BLOCK_SIZE, COLUMN_MAGIC, COLUMN_VERSION
from itsk.errors import CorruptBlockError, EmptyInputError

from .bitpacking import PackedBlock, pack_block, payload_size, unpack_block
from .delta import (
    DeltaStream,
    as_uint64_array,
    delta_decode,
    delta_encode,
    unzigzag_array,
    zigzag_array,
)


_HEADER = struct.Struct("<BBQQ")
_BLOCK_HEADER = struct.Struct("<BB")


@dataclass(frozen=True)
class CompressedColumn:
    """Compressed timestamp column.

    Parameters
    ----------
    base : int
        First timestamp.
    blocks : Tuple[PackedBlock, ...]
        Packed blocks, all full except possibly the last one.
    total_count : int
        Number of timestamps.
    """

    base: int
    blocks: Tuple[PackedBlock, ...]
    total_count: int

    @property
    def bit_widths(self) -> list:
        """Bit width of each block."""
        return [block.bit_width for block in self.blocks]

    @property
    def nbytes(self) -> int:
        """Serialized size in bytes."""
        return serialized_size(self)


def compress_column(ts: Union[Sequence[int], np.ndarray]) -> CompressedColumn:
    """Compress a timestamp column.

    Parameters
    ----------
    ts : Sequence[int] or numpy.ndarray
        Non empty sequence of unsigned 64-bit integers, any order.

    Returns
    -------
    CompressedColumn
        Lossless compressed column.

    Raises
    ------
    EmptyInputError
        ts is empty.
    """
    arr = as_uint64_array(ts)

    if arr.size == 0:
        raise EmptyInputError("Cannot compress an empty column")

    stream = delta_encode(arr)
    entries = np.concatenate(
        [np.zeros(1, dtype=np.uint64), zigzag_array(stream.deltas)]
    )

    blocks = tuple(
        pack_block(entries[start : start + BLOCK_SIZE])
        for start in range(0, entries.size, BLOCK_SIZE)
    )

    return CompressedColumn(stream.base, blocks, int(arr.size))


def _check_shape(c: CompressedColumn) -> None:
    expected_blocks = -(-c.total_count // BLOCK_SIZE)

    if c.total_count < 1 or len(c.blocks) != expected_blocks:
        raise CorruptBlockError(
            f"{len(c.blocks)} blocks cannot hold {c.total_count} rows"
        )

    for i, block in enumerate(c.blocks):
        expected = min(BLOCK_SIZE, c.total_count - i * BLOCK_SIZE)
        if block.count != expected:
            raise CorruptBlockError(
                f"Block {i} holds {block.count} rows, expected {expected}"
            )


def decompress_column(c: CompressedColumn) -> np.ndarray:
    """Decompress a column.

    Parameters
    ----------
    c : CompressedColumn
        Well formed column.

    Returns
    -------
    numpy.ndarray
        uint64 timestamps, exactly as compressed.

    Raises
    ------
    CorruptBlockError
        Block counts, widths or payloads are inconsistent.
    """
    _check_shape(c)

    entries = np.concatenate([unpack_block(block) for block in c.blocks])

    if entries[0] != 0:
        raise CorruptBlockError("First entry of a column must be 0")

    return delta_decode(DeltaStream(c.base, unzigzag_array(entries[1:])))


def decompress_block(c: CompressedColumn, i: int, first_value: int):
    """Decompress block i alone.

    Parameters
    ----------
    c : CompressedColumn
        Column holding the block.
    i : int
        Block index.
    first_value : int
        Timestamp of the block's first row (c.base for block 0).

    Returns
    -------
    numpy.ndarray
        uint64 timestamps of the block's rows.
    """
    if not 0 <= i < len(c.blocks):
        raise IndexError(f"Block {i} out of range 0..{len(c.blocks) - 1}")

    deltas = unzigzag_array(unpack_block(c.blocks[i]))
    deltas[0] = 0

    return delta_decode(DeltaStream(int(first_value), deltas[1:]))


def serialized_size(c: CompressedColumn) -> int:
    """Serialized size in bytes, headers included."""
    return _HEADER.size + sum(
        _BLOCK_HEADER.size + payload_size(b.count, b.bit_width)
        for b in c.blocks
    )


def compression_ratio(c: CompressedColumn) -> Fraction:
    """Raw size (8 bytes per timestamp) over serialized size.

    Parameters
    ----------
    c : CompressedColumn
        Column.

    Returns
    -------
    fractions.Fraction
        Compression ratio.
    """
    return Fraction(c.total_count * 8, serialized_size(c))


def serialize_column(c: CompressedColumn) -> bytes:
    """Serialize a column to bytes.

    Parameters
    ----------
    c : CompressedColumn
        Column.

    Returns
    -------
    bytes
        Serialized column, serialized_size(c) bytes long.
    """
    parts = [_HEADER.pack(COLUMN_MAGIC, COLUMN_VERSION, c.total_count, c.base)]

    for block in c.blocks:
        parts.append(_BLOCK_HEADER.pack(block.count - 1, block.bit_width))
        parts.append(bytes(block.payload))

    return b"".join(parts)


def deserialize_column(data: bytes) -> CompressedColumn:
    """Parse a serialized column.

    Parameters
    ----------
    data : bytes
        Exactly one serialized column.

    Returns
    -------
    CompressedColumn
        Parsed column.

    Raises
    ------
    CorruptBlockError
        Bad magic or version, truncated data or trailing bytes.
    """
    data = bytes(data)

    if len(data) < _HEADER.size:
        raise CorruptBlockError("Truncated column header")

    magic, version, total_count, base = _HEADER.unpack_from(data, 0)

    if magic != COLUMN_MAGIC:
        raise CorruptBlockError(f"Bad column magic 0x{magic:02X}")
    if version != COLUMN_VERSION:
        raise CorruptBlockError(f"Unsupported column version {version}")
    if total_count < 1:
        raise CorruptBlockError("Column without rows")

    offset = _HEADER.size
    blocks = []
    remaining = total_count

    while remaining > 0:
        if offset + _BLOCK_HEADER.size > len(data):
            raise CorruptBlockError(f"Truncated header of block {len(blocks)}")

        count_minus_one, width = _BLOCK_HEADER.unpack_from(data, offset)
        count = count_minus_one + 1
        offset += _BLOCK_HEADER.size

        if count > BLOCK_SIZE or width > 64:
            raise CorruptBlockError(
                f"Block {len(blocks)}: count {count}, width {width}"
            )

        size = payload_size(count, width)
        if offset + size > len(data):
            raise CorruptBlockError(
                f"Truncated payload of block {len(blocks)}"
            )

        blocks.append(PackedBlock(count, width, data[offset : offset + size]))
        offset += size
        remaining -= count

    if offset != len(data):
        raise CorruptBlockError(f"{len(data) - offset} trailing bytes")

    column = CompressedColumn(base, tuple(blocks), total_count)
    _check_shape(column)

    return column

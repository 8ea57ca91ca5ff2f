"""Block bit packing module.

Blocks of up to BLOCK_SIZE unsigned values are stored with the minimal
common bit width. Value k occupies bits [k * width, (k + 1) * width) of a
little-endian bitstream: bit 0 is the least significant bit of byte 0.
"""

from typing import NamedTuple

import numpy as np

from itsk.constants import BLOCK_SIZE
from itsk.errors import CorruptBlockError


class PackedBlock(NamedTuple):
    """Bit packed block.

    Parameters
    ----------
    count : int
        Number of values, 1..BLOCK_SIZE.
    bit_width : int
        Bits per value, 0..64.
    payload : bytes
        ceil(count * bit_width / 8) bytes.
    """

    count: int
    bit_width: int
    payload: bytes


def payload_size(count: int, bit_width: int) -> int:
    """Bytes needed by count values of bit_width bits."""
    return (count * bit_width + 7) // 8


def bit_width(values: np.ndarray) -> int:
    """Bit length of the largest value, 0 when all values are 0."""
    values = np.asarray(values, dtype=np.uint64)
    if values.size == 0:
        return 0
    return int(values.max()).bit_length()


def pack_block(values: np.ndarray) -> PackedBlock:
    """Pack unsigned values with their minimal bit width.

    Parameters
    ----------
    values : numpy.ndarray
        1..BLOCK_SIZE unsigned 64-bit values.

    Returns
    -------
    PackedBlock
        Packed block.
    """
    values = np.asarray(values, dtype=np.uint64)
    count = values.size

    if not 1 <= count <= BLOCK_SIZE:
        raise ValueError(f"Block of {count} values, expected 1..{BLOCK_SIZE}")

    width = bit_width(values)

    if width == 0:
        return PackedBlock(count, 0, b"")

    shifts = np.arange(width, dtype=np.uint64)
    bits = ((values[:, np.newaxis] >> shifts) & np.uint64(1)).astype(np.uint8)
    payload = np.packbits(bits.ravel(), bitorder="little").tobytes()

    return PackedBlock(count, width, payload)


def unpack_block(block: PackedBlock) -> np.ndarray:
    """Unpack a block.

    Parameters
    ----------
    block : PackedBlock
        Block to unpack.

    Returns
    -------
    numpy.ndarray
        block.count uint64 values.

    Raises
    ------
    CorruptBlockError
        Count, width and payload length are inconsistent.
    """
    count, width, payload = block

    if not 1 <= count <= BLOCK_SIZE:
        raise CorruptBlockError(f"Bad block count {count}")
    if not 0 <= width <= 64:
        raise CorruptBlockError(f"Bad bit width {width}")
    if len(payload) != payload_size(count, width):
        raise CorruptBlockError(
            f"Block of {count} x {width} bits has {len(payload)} payload "
            f"bytes, expected {payload_size(count, width)}"
        )

    if width == 0:
        return np.zeros(count, dtype=np.uint64)

    bits = np.unpackbits(
        np.frombuffer(payload, dtype=np.uint8),
        count=count * width,
        bitorder="little",
    )
    bits = bits.reshape(count, width).astype(np.uint64)
    shifts = np.arange(width, dtype=np.uint64)

    return np.bitwise_or.reduce(bits << shifts, axis=1)

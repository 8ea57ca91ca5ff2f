"""Compression module.

Lossless timestamp column compression: delta encoding, zigzag mapping and
block bit packing.
"""

from .bitpacking import (
    PackedBlock,
    bit_width,
    pack_block,
    payload_size,
    unpack_block,
)
from .column import (
    CompressedColumn,
    compress_column,
    compression_ratio,
    decompress_block,
    decompress_column,
    deserialize_column,
    serialize_column,
    serialized_size,
)
from .delta import (
    DeltaStream,
    as_uint64_array,
    delta_decode,
    delta_encode,
    unzigzag,
    unzigzag_array,
    zigzag,
    zigzag_array,
)


__all__ = [
    "PackedBlock",
    "bit_width",
    "pack_block",
    "payload_size",
    "unpack_block",
    "CompressedColumn",
    "compress_column",
    "compression_ratio",
    "decompress_block",
    "decompress_column",
    "deserialize_column",
    "serialize_column",
    "serialized_size",
    "DeltaStream",
    "as_uint64_array",
    "delta_decode",
    "delta_encode",
    "unzigzag",
    "unzigzag_array",
    "zigzag",
    "zigzag_array",
]

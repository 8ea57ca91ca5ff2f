"""Segment module.

A Segment is an immutable, sorted run of (timestamp, value) rows of one
partition. Timestamps are stored as a CompressedColumn next to a sparse
index holding the (min, max) timestamp of every BLOCK_SIZE rows, so range
reads decompress only the blocks that can hold matching rows.

File layout, little-endian::

    "ITSK" | version (2) | format tag (1) | row_count (8)
    block index (ceil(row_count / BLOCK_SIZE) x 16: min, max)
    CompressedColumn
    values (row_count x 8, IEEE-754 double)
"""

import struct
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from itsk.codec import TimestampFormat
from itsk.compression import (
    CompressedColumn,
    compress_column,
    decompress_block,
    decompress_column,
    deserialize_column,
    serialize_column,
    serialized_size,
)
from itsk.constants import BLOCK_SIZE, SEGMENT_MAGIC, SEGMENT_VERSION
from itsk.errors import (
    CorruptBlockError,
    CorruptSegmentError,
    UnsortedBatchError,
)

from .report import ScanCounters


_HEADER = struct.Struct("<4sHBQ")


@dataclass(frozen=True, eq=False)
class Segment:
    """Immutable sorted segment.

    Parameters
    ----------
    fmt : TimestampFormat
        Ts64Sec or Ts64Frac.
    ts_column : CompressedColumn
        Compressed, non decreasing timestamps.
    values : numpy.ndarray
        float64 values, one per timestamp.
    block_index : numpy.ndarray
        uint64 array of shape (n_blocks, 2): (min, max) timestamp of each
        BLOCK_SIZE rows.
    """

    fmt: TimestampFormat
    ts_column: CompressedColumn
    values: np.ndarray
    block_index: np.ndarray

    @classmethod
    def from_arrays(
        cls, ts: np.ndarray, values: np.ndarray, fmt: TimestampFormat
    ) -> "Segment":
        """Build a segment from sorted columns.

        Parameters
        ----------
        ts : numpy.ndarray
            Non empty, non decreasing uint64 timestamps.
        values : numpy.ndarray
            float64 values, same length.
        fmt : TimestampFormat
            Format of ts.

        Returns
        -------
        Segment
            New segment.

        Raises
        ------
        UnsortedBatchError
            ts decreases somewhere.
        """
        ts = np.asarray(ts, dtype=np.uint64)
        values = np.asarray(values, dtype=np.float64)

        if ts.shape != values.shape:
            raise ValueError(
                f"{ts.size} timestamps but {values.size} values"
            )

        if ts.size > 1 and np.any(ts[1:] < ts[:-1]):
            row = int(np.argmax(ts[1:] < ts[:-1])) + 1
            raise UnsortedBatchError(
                f"Timestamp {int(ts[row])} at row {row} precedes "
                f"{int(ts[row - 1])}"
            )

        starts = np.arange(0, ts.size, BLOCK_SIZE)
        ends = np.minimum(starts + BLOCK_SIZE, ts.size) - 1
        block_index = np.column_stack([ts[starts], ts[ends]])

        values = values.copy()
        values.flags.writeable = False
        block_index.flags.writeable = False

        return cls(fmt, compress_column(ts), values, block_index)

    @property
    def row_count(self) -> int:
        """Number of rows."""
        return self.ts_column.total_count

    @property
    def ts_bytes(self) -> int:
        """Serialized size of the timestamp column."""
        return serialized_size(self.ts_column)

    @property
    def value_bytes(self) -> int:
        """Size of the value column."""
        return self.row_count * 8

    @property
    def min_ts(self) -> int:
        """Smallest timestamp."""
        return int(self.block_index[0, 0])

    @property
    def max_ts(self) -> int:
        """Largest timestamp."""
        return int(self.block_index[-1, 1])

    def timestamps(self) -> np.ndarray:
        """Decompress the whole timestamp column."""
        return decompress_column(self.ts_column)

    def candidate_blocks(self, lo: int, hi: int) -> range:
        """Blocks whose (min, max) intersects [lo, hi]."""
        lo, hi = np.uint64(lo), np.uint64(hi)
        first = int(np.searchsorted(self.block_index[:, 1], lo, "left"))
        last = int(np.searchsorted(self.block_index[:, 0], hi, "right"))
        return range(first, max(first, last))

    def scan(
        self,
        lo: int,
        hi: int,
        counters: Optional[ScanCounters] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Rows with lo <= ts <= hi.

        Parameters
        ----------
        lo, hi : int
            Inclusive bounds.
        counters : ScanCounters, optional
            Incremented once per decompressed block.

        Returns
        -------
        Tuple[numpy.ndarray, numpy.ndarray]
            Matching timestamps (uint64) and values (float64), in row order.
        """
        lo64, hi64 = np.uint64(lo), np.uint64(hi)
        ts_parts, value_parts = [], []

        for i in self.candidate_blocks(lo, hi):
            ts = decompress_block(self.ts_column, i, self.block_index[i, 0])
            if counters is not None:
                counters.blocks_decompressed += 1

            start = i * BLOCK_SIZE
            mask = (ts >= lo64) & (ts <= hi64)
            ts_parts.append(ts[mask])
            value_parts.append(self.values[start : start + ts.size][mask])

        if not ts_parts:
            return np.empty(0, np.uint64), np.empty(0, np.float64)

        return np.concatenate(ts_parts), np.concatenate(value_parts)

    def check(self) -> None:
        """Verify sortedness and the sparse index against the data.

        Raises
        ------
        CorruptSegmentError
            The segment is inconsistent.
        """
        try:
            ts = self.timestamps()
        except CorruptBlockError as error:
            raise CorruptSegmentError(f"Timestamp column: {error}")

        if ts.size != self.values.size:
            raise CorruptSegmentError(
                f"{ts.size} timestamps but {self.values.size} values"
            )
        if ts.size > 1 and np.any(ts[1:] < ts[:-1]):
            raise CorruptSegmentError("Timestamps are not sorted")

        starts = np.arange(0, ts.size, BLOCK_SIZE)
        expected = np.column_stack(
            [
                np.minimum.reduceat(ts, starts),
                np.maximum.reduceat(ts, starts),
            ]
        )
        if not np.array_equal(expected, self.block_index):
            raise CorruptSegmentError("Block index disagrees with the data")

    def to_bytes(self) -> bytes:
        """Serialize to the segment file layout."""
        return b"".join(
            [
                _HEADER.pack(
                    SEGMENT_MAGIC,
                    SEGMENT_VERSION,
                    self.fmt.tag,
                    self.row_count,
                ),
                self.block_index.astype("<u8").tobytes(),
                serialize_column(self.ts_column),
                self.values.astype("<f8").tobytes(),
            ]
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "Segment":
        """Parse a segment file.

        Parameters
        ----------
        data : bytes
            Segment file content.

        Returns
        -------
        Segment
            Parsed and checked segment.

        Raises
        ------
        CorruptSegmentError
            The content is not a consistent segment.
        """
        data = bytes(data)

        if len(data) < _HEADER.size:
            raise CorruptSegmentError("Truncated segment header")

        magic, version, tag, rows = _HEADER.unpack_from(data, 0)

        if magic != SEGMENT_MAGIC:
            raise CorruptSegmentError(f"Bad segment magic {magic!r}")
        if version != SEGMENT_VERSION:
            raise CorruptSegmentError(f"Unsupported segment version {version}")
        try:
            fmt = TimestampFormat.from_tag(tag)
        except ValueError as error:
            raise CorruptSegmentError(str(error))

        n_blocks = -(-rows // BLOCK_SIZE)
        index_end = _HEADER.size + 16 * n_blocks
        values_start = len(data) - 8 * rows

        if rows < 1 or values_start < index_end:
            raise CorruptSegmentError(f"Segment too short for {rows} rows")

        block_index = np.frombuffer(
            data[_HEADER.size : index_end], dtype="<u8"
        ).astype(np.uint64)
        values = np.frombuffer(data[values_start:], dtype="<f8").astype(
            np.float64
        )

        try:
            column = deserialize_column(data[index_end:values_start])
        except CorruptBlockError as error:
            raise CorruptSegmentError(f"Timestamp column: {error}")

        if column.total_count != rows:
            raise CorruptSegmentError(
                f"Column holds {column.total_count} rows, header says {rows}"
            )

        values.flags.writeable = False
        block_index = block_index.reshape(n_blocks, 2)
        block_index.flags.writeable = False

        segment = cls(fmt, column, values, block_index)
        segment.check()

        return segment

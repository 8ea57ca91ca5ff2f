"""Table module.

A Table holds (timestamp, value) rows of a single Ts64Sec or Ts64Frac
format, partitioned by day. Each write creates one immutable Segment per
touched partition; reads work on the partition map visible when they start,
so writers never block readers.

A Table is in memory unless it is given a directory. Persisted tables keep
one subdirectory per partition, named by its Ts32 key, holding numbered
segment files, plus a table.json with the format.
"""

import json
import logging
import os
import shutil
import threading
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from itsk.codec import (
    TimestampFormat,
    as_format,
    day_key,
    int_to_date,
    truncate,
    valid_mask,
)
from itsk.compression import as_uint64_array
from itsk.errors import (
    CorruptSegmentError,
    FormatMismatchError,
    InvalidDateError,
    InvalidEncodingError,
    InvalidRangeError,
    StoreWriteError,
    UnsortedBatchError,
)

from .report import STATS_COLUMNS, BinAggregate, ScanCounters, StorageReport
from .segment import Segment


logger = logging.getLogger(__name__)

_METADATA = "table.json"
_SEGMENT_SUFFIX = ".seg"


@dataclass
class Partition:
    """Segments of one day.

    A published Partition is never modified; writes replace it with a new
    one holding one more segment.

    Parameters
    ----------
    key : int
        Ts32 day.
    segments : List[Segment]
        Segments in write order.
    """

    key: int
    segments: List[Segment] = field(default_factory=list)

    @property
    def row_count(self) -> int:
        """Rows over all segments."""
        return sum(s.row_count for s in self.segments)


class Table:
    """Day partitioned time-series table.

    Parameters
    ----------
    fmt : str or TimestampFormat
        'ts64sec' or 'ts64frac'.
    path : str or pathlib.Path, optional
        Directory persisting the table, by default None (in memory). An
        existing table directory must hold the same format.

    Attributes
    ----------
    fmt : TimestampFormat
        Format of every stored timestamp.
    path : pathlib.Path or None
        Table directory.
    counters : ScanCounters
        Read work since the last reset_counters().
    """

    def __init__(
        self,
        fmt: Union[str, TimestampFormat],
        path: Optional[Union[str, Path]] = None,
    ) -> None:
        fmt = as_format(fmt)

        if fmt is TimestampFormat.TS32:
            raise FormatMismatchError(
                "Tables store Ts64Sec or Ts64Frac timestamps, not Ts32"
            )

        self.fmt = fmt
        self.path = Path(path) if path is not None else None
        self.counters = ScanCounters()

        self._partitions: Dict[int, Partition] = {}
        self._lock = threading.Lock()
        self._next_seq: Dict[int, int] = {}

        if self.path is not None:
            self._init_directory()

    def __repr__(self) -> str:
        where = str(self.path) if self.path is not None else "memory"
        return (
            f"Table({self.fmt.value}, {where}, "
            f"{len(self._partitions)} partitions)"
        )

    # =========================================================================
    # Persistence
    # =========================================================================
    def _init_directory(self) -> None:
        metadata = self.path / _METADATA

        if metadata.exists():
            stored = json.loads(metadata.read_text(encoding="utf-8"))
            if stored.get("format") != self.fmt.value:
                raise FormatMismatchError(
                    f"{self.path} holds a {stored.get('format')} table, "
                    f"not {self.fmt.value}"
                )
            return

        try:
            self.path.mkdir(parents=True, exist_ok=True)
            metadata.write_text(
                json.dumps({"format": self.fmt.value}), encoding="utf-8"
            )
        except OSError as error:
            raise StoreWriteError(f"Cannot create {self.path}: {error}")

        logger.info("Created %s table at %s", self.fmt.value, self.path)

    @classmethod
    def open(cls, path: Union[str, Path]) -> "Table":
        """Load a persisted table.

        Parameters
        ----------
        path : str or pathlib.Path
            Table directory.

        Returns
        -------
        Table
            Table with every stored segment.

        Raises
        ------
        CorruptSegmentError
            The directory or one of its segment files is inconsistent.
        """
        path = Path(path)
        metadata = path / _METADATA

        if not metadata.is_file():
            raise FileNotFoundError(f"No table at {path}")

        try:
            fmt = as_format(json.loads(metadata.read_text("utf-8"))["format"])
        except (KeyError, ValueError) as error:
            raise CorruptSegmentError(f"{metadata}: {error}")

        table = cls(fmt, path)

        for directory in sorted(p for p in path.iterdir() if p.is_dir()):
            if not directory.name.isdigit():
                continue

            key = int(directory.name)
            segments = []
            files = sorted(directory.glob(f"*{_SEGMENT_SUFFIX}"))

            for file in files:
                try:
                    segment = Segment.from_bytes(file.read_bytes())
                except CorruptSegmentError as error:
                    raise CorruptSegmentError(f"{file}: {error}")

                if segment.fmt is not fmt or not np.all(
                    day_key(segment.block_index, fmt) == key
                ):
                    raise CorruptSegmentError(
                        f"{file} does not belong to partition {key}"
                    )
                segments.append(segment)

            if segments:
                table._partitions[key] = Partition(key, segments)
                table._next_seq[key] = int(files[-1].stem) + 1

        logger.info(
            "Opened %s (%d partitions)", path, len(table._partitions)
        )

        return table

    def _write_segment_files(self, planned) -> None:
        """Write the segment files of one batch, all or none."""
        written = []

        for key, seq, segment in planned:
            directory = self.path / str(key)
            target = directory / f"{seq:06d}{_SEGMENT_SUFFIX}"
            tmp = target.with_suffix(".tmp")

            try:
                directory.mkdir(exist_ok=True)
                tmp.write_bytes(segment.to_bytes())
                os.replace(tmp, target)
            except OSError as error:
                if directory.is_dir():
                    tmp.unlink(missing_ok=True)
                for path in written:
                    path.unlink(missing_ok=True)
                raise StoreWriteError(
                    f"Cannot write segment {key}/{seq:06d}: {error}"
                ) from error

            written.append(target)
            logger.debug(
                "Wrote %s (%d rows, %d ts bytes)",
                target,
                segment.row_count,
                segment.ts_bytes,
            )

    def _remove_partition_directories(self, keys: List[int]) -> None:
        """Delete partition directories, none of them if one cannot go.

        Directories are first renamed out of the table; names that are not
        a day are ignored by Table.open.
        """
        moved = []

        for key in keys:
            directory = self.path / str(key)
            trash = self.path / f".dropped-{key}"
            if not directory.exists():
                continue
            try:
                if trash.exists():
                    shutil.rmtree(trash)
                os.rename(directory, trash)
            except OSError as error:
                for original, renamed in reversed(moved):
                    os.rename(renamed, original)
                raise StoreWriteError(
                    f"Cannot drop partition {key}: {error}"
                ) from error
            moved.append((directory, trash))

        for _, trash in moved:
            try:
                shutil.rmtree(trash)
            except OSError as error:
                logger.warning("Could not delete %s: %s", trash, error)

    # =========================================================================
    # Writes
    # =========================================================================
    def write_batch(self, ts, values) -> List[str]:
        """Store a sorted batch of rows.

        The batch is split by day; one new segment is created in each
        touched partition.

        Parameters
        ----------
        ts : Sequence[int] or numpy.ndarray
            Non decreasing timestamps of the table's format.
        values : Sequence[float] or numpy.ndarray
            One value per timestamp.

        Returns
        -------
        List[str]
            Ids ('<day>/<sequence>') of the created segments.

        Raises
        ------
        FormatMismatchError
            A timestamp is not a valid encoding of the table's format.
        UnsortedBatchError
            The timestamps decrease somewhere.
        StoreWriteError
            A segment file could not be written.
        """
        try:
            ts = as_uint64_array(ts)
        except InvalidEncodingError as error:
            raise FormatMismatchError(str(error))

        values = np.asarray(values, dtype=np.float64).ravel()

        if ts.size != values.size:
            raise ValueError(f"{ts.size} timestamps but {values.size} values")
        if ts.size == 0:
            return []

        mask = valid_mask(ts, self.fmt)
        if not mask.all():
            row = int(np.argmin(mask))
            raise FormatMismatchError(
                f"Row {row}: {int(ts[row])} is not a valid {self.fmt.value}"
            )

        if ts.size > 1 and np.any(ts[1:] < ts[:-1]):
            row = int(np.argmax(ts[1:] < ts[:-1])) + 1
            raise UnsortedBatchError(
                f"Row {row}: {int(ts[row])} precedes {int(ts[row - 1])}"
            )

        keys = day_key(ts, self.fmt)
        day_starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        day_ends = np.r_[day_starts[1:], ts.size]

        # Build every segment before touching the partition map.
        new_segments = [
            (int(keys[a]), Segment.from_arrays(ts[a:b], values[a:b], self.fmt))
            for a, b in zip(day_starts, day_ends)
        ]

        ids = []
        with self._lock:
            planned = [
                (key, self._next_seq.get(key, 0), segment)
                for key, segment in new_segments
            ]

            if self.path is not None:
                self._write_segment_files(planned)

            partitions = dict(self._partitions)
            for key, seq, segment in planned:
                previous = partitions.get(key)
                segments = previous.segments if previous is not None else []
                partitions[key] = Partition(key, [*segments, segment])
                ids.append(f"{key}/{seq:06d}")

            self._partitions = partitions
            for key, seq, _ in planned:
                self._next_seq[key] = seq + 1

        return ids

    def drop_partitions_before(self, cutoff_day: int) -> int:
        """Drop every partition with key < cutoff_day.

        Parameters
        ----------
        cutoff_day : int
            Ts32 day, kept itself.

        Returns
        -------
        int
            Number of dropped partitions.

        Raises
        ------
        InvalidDateError
            cutoff_day is not a valid Ts32.
        StoreWriteError
            A partition directory could not be removed; nothing is dropped.
        """
        try:
            int_to_date(cutoff_day)
        except InvalidEncodingError as error:
            raise InvalidDateError(str(error))

        with self._lock:
            dropped = sorted(k for k in self._partitions if k < cutoff_day)

            if self.path is not None:
                self._remove_partition_directories(dropped)

            self._partitions = {
                k: p for k, p in self._partitions.items() if k >= cutoff_day
            }

        logger.info(
            "Dropped %d partitions before %d", len(dropped), cutoff_day
        )

        return len(dropped)

    # =========================================================================
    # Reads
    # =========================================================================
    @property
    def partitions(self) -> Dict[int, Partition]:
        """Snapshot of the partition map, by day."""
        return dict(self._partitions)

    @property
    def row_count(self) -> int:
        """Number of stored rows."""
        return sum(p.row_count for p in self._partitions.values())

    def _snapshot(self) -> Dict[int, Tuple[Segment, ...]]:
        """Segments visible now, by partition day."""
        partitions = self._partitions
        return {k: tuple(p.segments) for k, p in partitions.items()}

    def reset_counters(self) -> None:
        """Zero the scan counters."""
        self.counters.reset()

    def _check_range(self, lo: int, hi: int) -> Tuple[int, int]:
        for bound in (lo, hi):
            if isinstance(bound, bool) or not isinstance(
                bound, (int, np.integer)
            ):
                raise InvalidRangeError(f"Bound {bound!r} is not an integer")
            if not 0 <= int(bound) < 1 << 64:
                raise InvalidRangeError(f"Bound {bound} out of 64-bit range")

        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise InvalidRangeError(f"Empty range: {lo} > {hi}")

        return lo, hi

    def range_arrays(self, lo: int, hi: int) -> Tuple[np.ndarray, np.ndarray]:
        """Rows with lo <= ts <= hi as numpy columns.

        Bounds are compared as plain integers, so bin lower bounds such as
        a month label followed by zeros work as well as real timestamps.

        Parameters
        ----------
        lo, hi : int
            Inclusive bounds in the table's format.

        Returns
        -------
        Tuple[numpy.ndarray, numpy.ndarray]
            uint64 timestamps and float64 values ordered by partition day,
            segment and row.

        Raises
        ------
        InvalidRangeError
            lo > hi or a bound is not a 64-bit unsigned integer.
        """
        lo, hi = self._check_range(lo, hi)

        snapshot = self._snapshot()
        keys = sorted(snapshot)

        first_day = day_key(lo, self.fmt)
        last_day = day_key(hi, self.fmt)

        ts_parts, value_parts = [], []
        touched = keys[
            bisect_left(keys, first_day) : bisect_right(keys, last_day)
        ]
        for key in touched:
            self.counters.partitions_opened += 1

            for segment in snapshot[key]:
                if segment.max_ts < lo or segment.min_ts > hi:
                    continue
                ts, values = segment.scan(lo, hi, self.counters)
                ts_parts.append(ts)
                value_parts.append(values)

        if not ts_parts:
            return np.empty(0, np.uint64), np.empty(0, np.float64)

        return np.concatenate(ts_parts), np.concatenate(value_parts)

    def range_query(self, lo: int, hi: int) -> List[Tuple[int, float]]:
        """Rows with lo <= ts <= hi (SQL BETWEEN).

        Parameters
        ----------
        lo, hi : int
            Inclusive bounds in the table's format.

        Returns
        -------
        List[Tuple[int, float]]
            (ts, value) rows ordered by partition day, segment and row.

        Raises
        ------
        InvalidRangeError
            lo > hi or a bound is not a 64-bit unsigned integer.
        """
        ts, values = self.range_arrays(lo, hi)
        return list(zip(map(int, ts), map(float, values)))

    def aggregate_bins(
        self, lo: int, hi: int, unit: str
    ) -> List[BinAggregate]:
        """Count, sum, min, max and mean of values per time bin.

        Parameters
        ----------
        lo, hi : int
            Inclusive bounds in the table's format.
        unit : str
            Bin unit: 'month', 'day', 'hour', 'minute' or 'second'.

        Returns
        -------
        List[BinAggregate]
            One aggregate per non empty bin, ascending by label.

        Raises
        ------
        InvalidRangeError
            lo > hi.
        UnitFinerThanFormatError
            unit is finer than the table's format.
        """
        # Validates the unit before any read.
        truncate(0, unit, self.fmt)

        ts, values = self.range_arrays(lo, hi)

        if ts.size == 0:
            return []

        frame = pd.DataFrame(
            {"bin": truncate(ts, unit, self.fmt), "value": values}
        )
        grouped = frame.groupby("bin", sort=True)["value"].agg(
            ["count", "sum", "min", "max"]
        )

        return [
            BinAggregate(
                int(label),
                int(row["count"]),
                float(row["sum"]),
                float(row["min"]),
                float(row["max"]),
                float(row["sum"]) / int(row["count"]),
            )
            for label, row in grouped.iterrows()
        ]

    def stats(self) -> StorageReport:
        """Storage usage per partition and in total.

        Returns
        -------
        StorageReport
            Row counts, compressed timestamp bytes, value bytes and
            compression ratio.
        """
        rows = []
        for key, segments in sorted(self._snapshot().items()):
            n_rows = sum(s.row_count for s in segments)
            ts_bytes = sum(s.ts_bytes for s in segments)
            rows.append(
                {
                    "partition": key,
                    "segments": len(segments),
                    "rows": n_rows,
                    "ts_bytes": ts_bytes,
                    "value_bytes": n_rows * 8,
                    "raw_ts_bytes": n_rows * 8,
                    "ratio": n_rows * 8 / ts_bytes,
                }
            )

        if not rows:
            return StorageReport()

        return StorageReport(pd.DataFrame(rows, columns=STATS_COLUMNS))

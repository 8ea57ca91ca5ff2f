"""Batched ingestion module.

Records are staged in a BatchBuffer and written to the destination store
once the buffer reaches its capacity:

1. Buffering: records accumulate until capacity is reached.
2. Sorting (optional): the batch is stable sorted by timestamp.
3. Batch execution: the batch is written with one store call.

A buffer has a single owner; it may move between threads but must never be
used by two of them at once.
"""

import logging
import time
from dataclasses import dataclass, field
from numbers import Integral, Real
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from itsk.codec import TimestampFormat, as_format, is_valid
from itsk.constants import DEFAULT_BATCH_SIZE, MAX_BATCH_SIZE
from itsk.errors import (
    FormatMismatchError,
    InvalidTimestampError,
    ItskError,
    StoreWriteError,
)


logger = logging.getLogger(__name__)


class Record(NamedTuple):
    """Incoming measurement.

    Parameters
    ----------
    ts : int
        Ts64Sec or Ts64Frac timestamp.
    value : float
        Measured value.
    fmt : TimestampFormat, optional
        Format the producer declares for ts, by default None (the buffer's
        format is assumed).
    """

    ts: int
    value: float
    fmt: Optional[TimestampFormat] = None


@dataclass
class FlushReport:
    """Outcome of one or more flushes.

    Attributes
    ----------
    records_flushed : int
        Records written.
    batches : int
        Store writes performed.
    segments_created : int
        Segments created by those writes.
    wall_time : float
        Seconds spent in store writes.
    batch_latencies : List[float]
        Seconds spent by each store write.
    """

    records_flushed: int = 0
    batches: int = 0
    segments_created: int = 0
    wall_time: float = 0.0
    batch_latencies: List[float] = field(default_factory=list)

    def __add__(self, other: "FlushReport") -> "FlushReport":
        return FlushReport(
            self.records_flushed + other.records_flushed,
            self.batches + other.batches,
            self.segments_created + other.segments_created,
            self.wall_time + other.wall_time,
            self.batch_latencies + other.batch_latencies,
        )

    @property
    def throughput(self) -> float:
        """Records per second of store write time."""
        if self.wall_time <= 0:
            return 0.0
        return self.records_flushed / self.wall_time


class BatchBuffer:
    """Buffer of records flushed in fixed size batches.

    Parameters
    ----------
    destination : Table
        Store receiving the batches (anything with a
        write_batch(ts, values) -> segment ids method).
    fmt : str or TimestampFormat, optional
        Format of the incoming timestamps, by default the destination's.
    capacity : int, optional
        Records per batch, by default DEFAULT_BATCH_SIZE.
    sort_on_flush : bool, optional
        Stable sort each batch by timestamp before writing, by default
        True.

    Attributes
    ----------
    pending : List[Record]
        Staged records, in arrival order.
    """

    def __init__(
        self,
        destination,
        fmt: Union[str, TimestampFormat, None] = None,
        capacity: int = DEFAULT_BATCH_SIZE,
        sort_on_flush: bool = True,
    ) -> None:
        if isinstance(capacity, bool) or not isinstance(capacity, Integral):
            raise TypeError(f"Capacity must be an integer, got {capacity!r}")
        if capacity < 1:
            raise ValueError(f"Capacity must be at least 1, got {capacity}")
        if capacity > MAX_BATCH_SIZE:
            logger.warning(
                "Batch capacity %d exceeds the recommended %d",
                capacity,
                MAX_BATCH_SIZE,
            )

        if fmt is None:
            fmt = destination.fmt

        self.destination = destination
        self.fmt = as_format(fmt)
        self.capacity = int(capacity)
        self.sort_on_flush = sort_on_flush
        self.pending: List[Record] = []

    def __len__(self) -> int:
        return len(self.pending)

    def _check(self, record: Record) -> Record:
        ts, value, fmt = record

        if fmt is not None and as_format(fmt) is not self.fmt:
            raise FormatMismatchError(
                f"{as_format(fmt).value} record in a {self.fmt.value} buffer"
            )

        if not is_valid(ts, self.fmt):
            for other in TimestampFormat:
                if other is not self.fmt and is_valid(ts, other):
                    raise FormatMismatchError(
                        f"{ts} is a {other.value} timestamp, the buffer "
                        f"expects {self.fmt.value}"
                    )
            raise InvalidTimestampError(
                f"{ts!r} is not a valid {self.fmt.value} timestamp"
            )

        if isinstance(value, bool) or not isinstance(value, Real):
            raise TypeError(f"Value must be a real number, got {value!r}")

        return Record(int(ts), float(value), self.fmt)

    def append(self, record: Union[Record, Tuple]) -> Optional[FlushReport]:
        """Stage a record, flushing when the buffer reaches capacity.

        Parameters
        ----------
        record : Record or tuple
            (ts, value) or (ts, value, fmt).

        Returns
        -------
        FlushReport or None
            Report of the flush triggered by this record, if any.

        Raises
        ------
        FormatMismatchError
            The record's timestamp belongs to another format.
        InvalidTimestampError
            The timestamp is not a valid encoding. The buffer is unchanged.
        StoreWriteError
            The triggered flush failed; records stay pending. A buffer
            left full by a failed flush is retried first and, if that
            fails again, the new record is not staged.
        """
        record = self._check(Record(*record))

        report = None
        if len(self.pending) >= self.capacity:
            report = self.flush()

        self.pending.append(record)

        if len(self.pending) >= self.capacity:
            flushed = self.flush()
            report = flushed if report is None else report + flushed
        return report

    def flush(self) -> FlushReport:
        """Write every pending record as one batch.

        Returns
        -------
        FlushReport
            Report of the write, zeros for an empty buffer.

        Raises
        ------
        StoreWriteError
            The store rejected the batch. Pending records are kept for a
            retry.
        """
        if not self.pending:
            return FlushReport()

        batch = self.pending
        if self.sort_on_flush:
            batch = sorted(batch, key=lambda r: r.ts)

        ts = np.fromiter((r.ts for r in batch), np.uint64, len(batch))
        values = np.fromiter((r.value for r in batch), np.float64, len(batch))

        start = time.perf_counter()
        try:
            segment_ids = self.destination.write_batch(ts, values)
        except (ItskError, OSError) as error:
            if isinstance(error, StoreWriteError):
                raise
            raise StoreWriteError(
                f"Batch of {len(batch)} records rejected: {error}"
            ) from error
        elapsed = time.perf_counter() - start

        logger.debug(
            "Flushed %d records into %d segments in %.6f s",
            len(batch),
            len(segment_ids),
            elapsed,
        )

        self.pending = []

        return FlushReport(
            records_flushed=len(batch),
            batches=1,
            segments_created=len(segment_ids),
            wall_time=elapsed,
            batch_latencies=[elapsed],
        )


def ingest_stream(
    records: Iterable,
    capacity: int,
    sort: bool,
    store,
    fmt: Union[str, TimestampFormat, None] = None,
) -> FlushReport:
    """Drive a BatchBuffer over a whole stream.

    Parameters
    ----------
    records : Iterable
        Records or (ts, value) tuples.
    capacity : int
        Records per batch.
    sort : bool
        Stable sort each batch before writing.
    store : Table
        Destination store.
    fmt : str or TimestampFormat, optional
        Format of the records, by default the store's.

    Returns
    -------
    FlushReport
        Aggregate report of every batch, final partial batch included.

    Raises
    ------
    ItskError
        Any append or flush error, with the index of the offending record
        in its position attribute and message.
    """
    buffer = BatchBuffer(store, fmt, capacity, sort)
    report = FlushReport()
    position = -1

    try:
        for position, record in enumerate(records):
            flushed = buffer.append(record)
            if flushed is not None:
                report += flushed
        report += buffer.flush()
    except ItskError as error:
        error.position = position
        error.args = (f"record {position}: {error}",) + error.args[1:]
        raise

    logger.info(
        "Ingested %d records in %d batches (%.0f records/s)",
        report.records_flushed,
        report.batches,
        report.throughput,
    )

    return report

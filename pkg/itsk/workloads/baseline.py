"""Text timestamp baseline.

The control arm of the benchmarks keeps instants as fixed width ISO-8601
text, "YYYY-MM-DDThh:mm:ss", and searches them by string comparison. Being
zero padded and fixed width, the text sorts exactly like the Ts64Sec
integer it renders.
"""

import re
from typing import Iterable, Iterator, List, NamedTuple

import numpy as np

from itsk.codec import (
    CivilDateTime,
    datetime_to_ts64sec,
    decode_to_datetime64,
    ts64sec_to_datetime,
)
from itsk.errors import (
    InvalidDateTimeError,
    InvalidEncodingError,
    MalformedBoundError,
)
from itsk.ingest import Record


ISO_LENGTH = 19

# Bytes per record before compression.
BASELINE_RECORD_BYTES = ISO_LENGTH + 8
INTEGER_RECORD_BYTES = 8 + 8

_ISO = re.compile(r"(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})")


class BaselineRecord(NamedTuple):
    """Record with a text timestamp.

    Parameters
    ----------
    ts_text : str
        "YYYY-MM-DDThh:mm:ss".
    value : float
        Measured value.
    """

    ts_text: str
    value: float


def format_iso(t: int) -> str:
    """Render a Ts64Sec as "YYYY-MM-DDThh:mm:ss".

    Parameters
    ----------
    t : int
        Ts64Sec timestamp.

    Returns
    -------
    str
        ISO-8601 text, 19 characters.
    """
    dt = ts64sec_to_datetime(t)
    return (
        f"{dt.year:04d}-{dt.month:02d}-{dt.day:02d}"
        f"T{dt.hour:02d}:{dt.minute:02d}:{dt.second:02d}"
    )


def parse_iso(text: str) -> int:
    """Parse "YYYY-MM-DDThh:mm:ss" into a Ts64Sec.

    Parameters
    ----------
    text : str
        ISO-8601 text, 19 characters.

    Returns
    -------
    int
        Ts64Sec timestamp.

    Raises
    ------
    MalformedBoundError
        text is not a valid seconds resolution ISO-8601 instant.
    """
    match = _ISO.fullmatch(text) if isinstance(text, str) else None

    if match is None:
        raise MalformedBoundError(
            f"{text!r} is not a YYYY-MM-DDThh:mm:ss instant"
        )

    fields = [int(g) for g in match.groups()]
    try:
        return datetime_to_ts64sec(CivilDateTime.of(*fields))
    except (InvalidDateTimeError, InvalidEncodingError) as error:
        raise MalformedBoundError(f"{text!r}: {error}")


def to_baseline(records: Iterable) -> Iterator[BaselineRecord]:
    """Render Ts64Sec records with text timestamps.

    Parameters
    ----------
    records : Iterable
        Records or (ts, value) tuples with Ts64Sec timestamps.

    Yields
    ------
    BaselineRecord
        Same instants and values.
    """
    for record in records:
        yield BaselineRecord(format_iso(record[0]), float(record[1]))


def from_baseline(stream: Iterable[BaselineRecord]) -> Iterator[Record]:
    """Inverse of to_baseline.

    Parameters
    ----------
    stream : Iterable[BaselineRecord]
        Text timestamp records.

    Yields
    ------
    Record
        Ts64Sec records.
    """
    for ts_text, value in stream:
        yield Record(parse_iso(ts_text), float(value))


def baseline_texts(ts: np.ndarray) -> np.ndarray:
    """Vectorized format_iso over a Ts64Sec column.

    Parameters
    ----------
    ts : numpy.ndarray
        Ts64Sec timestamps.

    Returns
    -------
    numpy.ndarray
        Array of 19 character strings.
    """
    instants = decode_to_datetime64(ts, "ts64sec").astype("datetime64[s]")
    return np.datetime_as_string(instants, unit="s")


def baseline_range_scan(
    stream: Iterable[BaselineRecord], lo_text: str, hi_text: str
) -> List[BaselineRecord]:
    """Linear scan by string comparison, bounds inclusive.

    Parameters
    ----------
    stream : Iterable[BaselineRecord]
        Records to scan.
    lo_text, hi_text : str
        ISO-8601 bounds.

    Returns
    -------
    List[BaselineRecord]
        Records with lo_text <= ts_text <= hi_text, in stream order.

    Raises
    ------
    MalformedBoundError
        A bound is not a valid ISO-8601 instant.
    """
    parse_iso(lo_text)
    parse_iso(hi_text)

    return [r for r in stream if lo_text <= r.ts_text <= hi_text]

"""Leap second table module.

The table lists the TAI - UTC offset in seconds and the UTC date it takes
effect. It is read from a CSV with one `YYYYMMDD,<offset>` entry per line,
`#` comment lines, and LF or CRLF line endings.

Attributes
----------
BUILTIN_LEAP_TABLE : LeapSecondTable
    Table shipped with itsk (1972-01-01, 10 s through 2017-01-01, 37 s).
"""

import io
import logging
import os
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Tuple, Union

from itsk.codec import CivilDateTime, datetime_to_ts64frac, int_to_date
from itsk.constants import LEAP_TABLE_ENV, _data
from itsk.errors import (
    InvalidEncodingError,
    LeapTableParseError,
    NonMonotoneTableError,
)

from .civil_arithmetic import civil_add_seconds


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeapSecondTable:
    """TAI - UTC offset history.

    Parameters
    ----------
    entries : Tuple[Tuple[int, int], ...]
        (effective UTC date as Ts32, TAI - UTC seconds), strictly increasing
        by date with non decreasing offsets.
    source : str, optional
        'builtin' or the path the table was read from, by default
        'builtin'.

    Attributes
    ----------
    dates : Tuple[int, ...]
        Effective dates.
    offsets : Tuple[int, ...]
        Offsets in effect from each date.
    tai_starts : Tuple[int, ...]
        Ts64Frac TAI instant of each effective UTC midnight.
    gap_starts : Tuple[int, ...]
        Ts64Frac TAI instant the effective UTC midnight would have had
        with the previous offset. TAI instants in [gap_start, tai_start)
        have no regular UTC label.
    """

    entries: Tuple[Tuple[int, int], ...]
    source: str = "builtin"
    dates: Tuple[int, ...] = field(init=False, repr=False)
    offsets: Tuple[int, ...] = field(init=False, repr=False)
    tai_starts: Tuple[int, ...] = field(init=False, repr=False)
    gap_starts: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        entries = tuple((int(d), int(k)) for d, k in self.entries)

        for (d0, k0), (d1, k1) in zip(entries, entries[1:]):
            if d1 <= d0:
                raise NonMonotoneTableError(
                    f"Effective dates not increasing: {d0} then {d1}"
                )
            if k1 - k0 != 1:
                raise NonMonotoneTableError(
                    f"Leap step at {d1} is {k0} -> {k1}, only +1 s steps "
                    "are supported"
                )

        tai_starts, gap_starts = [], []
        previous = 0
        for date, offset in entries:
            midnight = CivilDateTime(int_to_date(date))
            tai_starts.append(
                datetime_to_ts64frac(civil_add_seconds(midnight, offset))
            )
            gap_starts.append(
                datetime_to_ts64frac(civil_add_seconds(midnight, previous))
            )
            previous = offset

        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dates", tuple(d for d, _ in entries))
        object.__setattr__(self, "offsets", tuple(k for _, k in entries))
        object.__setattr__(self, "tai_starts", tuple(tai_starts))
        object.__setattr__(self, "gap_starts", tuple(gap_starts))

    def __len__(self) -> int:
        return len(self.entries)

    def offset_at(self, day: int) -> int:
        """TAI - UTC in effect during a UTC day.

        Parameters
        ----------
        day : int
            UTC date as Ts32.

        Returns
        -------
        int
            Offset in seconds, 0 before the first entry.
        """
        i = bisect_right(self.dates, int(day))
        return self.offsets[i - 1] if i > 0 else 0

    def step_at(self, day: int) -> int:
        """Offset increase taking effect exactly at a UTC day.

        Parameters
        ----------
        day : int
            UTC date as Ts32.

        Returns
        -------
        int
            Leap seconds inserted just before day, 0 if day is not an
            effective date or is the first entry.
        """
        i = bisect_right(self.dates, int(day))
        if i < 2 or self.dates[i - 1] != int(day):
            return 0
        return self.offsets[i - 1] - self.offsets[i - 2]

    def covers(self, day: int) -> bool:
        """Check if a UTC day lies within the table's domain."""
        return bool(self.dates) and int(day) >= self.dates[0]


def load_leap_table(
    source: Union[BinaryIO, bytes], name: str = None
) -> LeapSecondTable:
    """Parse a leap second CSV.

    Parameters
    ----------
    source : BinaryIO or bytes
        UTF-8 byte stream with `YYYYMMDD,<offset>` lines.
    name : str, optional
        Source tag of the table, by default the stream name or '<stream>'.

    Returns
    -------
    LeapSecondTable
        Parsed, validated table.

    Raises
    ------
    LeapTableParseError
        Malformed line (line and column reported) or no entries at all.
    NonMonotoneTableError
        Dates not increasing or a step other than +1 s.
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)

    if name is None:
        name = str(getattr(source, "name", "<stream>"))

    try:
        text = source.read().decode("utf-8-sig")
    except UnicodeDecodeError as error:
        raise LeapTableParseError(f"Not UTF-8: {error}", 1, 1)

    entries = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()

        if not line or line.startswith("#"):
            continue

        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise LeapTableParseError(
                f"Expected 2 fields, found {len(cells)}",
                lineno,
                min(len(cells), 2) + 1,
            )

        date_cell, offset_cell = cells

        if not date_cell.isdigit():
            raise LeapTableParseError(f"Bad date: {date_cell!r}", lineno, 1)
        try:
            int_to_date(int(date_cell))
        except InvalidEncodingError as error:
            raise LeapTableParseError(str(error), lineno, 1)

        try:
            offset = int(offset_cell)
        except ValueError:
            raise LeapTableParseError(
                f"Bad offset: {offset_cell!r}", lineno, 2
            )

        entries.append((int(date_cell), offset))

    if not entries:
        raise LeapTableParseError("No entries", max(len(lines), 1), 1)

    return LeapSecondTable(tuple(entries), source=name)


def read_leap_table(path: Union[str, Path]) -> LeapSecondTable:
    """Read a leap second CSV from a file.

    Parameters
    ----------
    path : str or pathlib.Path
        CSV path.

    Returns
    -------
    LeapSecondTable
        Parsed table tagged with its path.
    """
    with open(path, mode="rb") as f:
        return load_leap_table(f, name=str(path))


# =============================================================================
# Process wide table
# =============================================================================
with open(_data / "leap_seconds.csv", mode="rb") as _f:
    BUILTIN_LEAP_TABLE = load_leap_table(_f, name="builtin")

_installed = None


def default_leap_table() -> LeapSecondTable:
    """Table from ITSK_LEAP_TABLE if set, else the built-in table.

    Returns
    -------
    LeapSecondTable
        Default table.
    """
    path = os.environ.get(LEAP_TABLE_ENV)

    if path:
        logger.info("Reading leap second table from %s", path)
        return read_leap_table(path)

    return BUILTIN_LEAP_TABLE


def install_leap_table(table: LeapSecondTable = None) -> None:
    """Install the table used by conversions that receive none.

    Parameters
    ----------
    table : LeapSecondTable, optional
        Table to install. None reinstalls default_leap_table().
    """
    global _installed

    _installed = table if table is not None else default_leap_table()
    logger.info(
        "Installed leap second table %s (%d entries)",
        _installed.source,
        len(_installed),
    )


def get_leap_table() -> LeapSecondTable:
    """Installed table, installing the default one on first use.

    Returns
    -------
    LeapSecondTable
        Table in use.
    """
    if _installed is None:
        install_leap_table()
    return _installed

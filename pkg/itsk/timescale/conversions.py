"""UTC and TAI conversions module.

Both scales are carried as Ts64Frac integers. TAI is linear: it never shows a
second = 60. UTC labels an inserted leap second 23:59:60 on the day before
the effective date of a +1 step. Keep TAI for storage and arithmetic, UTC for
what people read and type.
"""

import logging
from bisect import bisect_right

from itsk.codec import (
    CivilDateTime,
    date_to_int,
    datetime_to_ts64frac,
    int_to_date,
    ts64frac_to_datetime,
)
from itsk.errors import LeapSecondBoundaryError, UnmappableInstantError

from .civil_arithmetic import civil_add_seconds, next_day, previous_day
from .leap_table import LeapSecondTable, get_leap_table


logger = logging.getLogger(__name__)

_warned_sources = set()


def _warn_out_of_domain(table: LeapSecondTable, day: int) -> None:
    if table.source not in _warned_sources:
        _warned_sources.add(table.source)
        logger.warning(
            "UTC day %d precedes the leap second table %s, offset 0 used",
            day,
            table.source,
        )


def utc_to_tai(t: int, table: LeapSecondTable = None) -> int:
    """Convert a UTC Ts64Frac to TAI.

    Adds the TAI - UTC offset in effect on the UTC day as a civil addition
    with carry. A 23:59:60 UTC instant maps to the TAI second just before
    the mapped midnight of the step.

    Parameters
    ----------
    t : int
        UTC instant as Ts64Frac, second = 60 allowed at leap boundaries.
    table : LeapSecondTable, optional
        Offset history, by default the installed table.

    Returns
    -------
    int
        TAI instant as Ts64Frac.

    Raises
    ------
    InvalidEncodingError
        t is not a valid Ts64Frac.
    LeapSecondBoundaryError
        t has second = 60 but no leap second was inserted there.
    """
    table = table if table is not None else get_leap_table()
    utc = ts64frac_to_datetime(t, allow_leap_second=True)
    day = date_to_int(utc.date)

    if utc.second == 60:
        effective = next_day(utc.date)
        if (utc.hour, utc.minute) != (23, 59) or not table.step_at(
            date_to_int(effective)
        ):
            raise LeapSecondBoundaryError(
                f"{t}: no leap second inserted before {effective}"
            )
        midnight = CivilDateTime(effective, 0, 0, 0, utc.frac_1e5)
        offset = table.offset_at(date_to_int(effective))
        return datetime_to_ts64frac(civil_add_seconds(midnight, offset - 1))

    if not table.covers(day):
        _warn_out_of_domain(table, day)

    return datetime_to_ts64frac(civil_add_seconds(utc, table.offset_at(day)))


def tai_to_utc(t: int, table: LeapSecondTable = None) -> int:
    """Convert a TAI Ts64Frac to UTC.

    Inverse of utc_to_tai. TAI instants inside an inserted leap second
    decode to UTC 23:59:60.

    Parameters
    ----------
    t : int
        TAI instant as Ts64Frac.
    table : LeapSecondTable, optional
        Offset history, by default the installed table.

    Returns
    -------
    int
        UTC instant as Ts64Frac.

    Raises
    ------
    InvalidEncodingError
        t is not a valid Ts64Frac.
    UnmappableInstantError
        t falls in the jump of the table's first entry, where no UTC
        label exists.
    """
    table = table if table is not None else get_leap_table()
    tai = ts64frac_to_datetime(t)
    t = int(t)

    i = bisect_right(table.tai_starts, t)

    if i < len(table) and t >= table.gap_starts[i]:
        # Between the old and the new offset of entry i.
        last_second = civil_add_seconds(
            ts64frac_to_datetime(table.tai_starts[i]), -1
        )
        if i > 0 and t >= datetime_to_ts64frac(last_second):
            effective = int_to_date(table.dates[i])
            leap = CivilDateTime(
                previous_day(effective), 23, 59, 60, tai.frac_1e5
            )
            return datetime_to_ts64frac(leap, allow_leap_second=True)
        raise UnmappableInstantError(
            f"TAI {t} has no UTC label (step to {table.offsets[i]} s on "
            f"{table.dates[i]})"
        )

    offset = table.offsets[i - 1] if i > 0 else 0
    return datetime_to_ts64frac(civil_add_seconds(tai, -offset))

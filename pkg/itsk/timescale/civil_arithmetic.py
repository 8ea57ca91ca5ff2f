"""Civil carry arithmetic module.

Seconds are added to a civil datetime field by field, carrying into the
minute, hour, day, month and year, without converting to any epoch.
"""

from itsk.codec.civil import (
    CivilDate,
    CivilDateTime,
    days_in_month,
    validate_datetime,
)
from itsk.constants import MAX_YEAR, MIN_YEAR
from itsk.errors import InvalidDateTimeError


def next_day(d: CivilDate) -> CivilDate:
    """Calendar day after d.

    Parameters
    ----------
    d : CivilDate
        Valid date.

    Returns
    -------
    CivilDate
        Following day.
    """
    year, month, day = d

    if day < days_in_month(year, month):
        return CivilDate(year, month, day + 1)
    if month < 12:
        return CivilDate(year, month + 1, 1)
    if year >= MAX_YEAR:
        raise InvalidDateTimeError(f"No day after {year:04d}-12-31")
    return CivilDate(year + 1, 1, 1)


def previous_day(d: CivilDate) -> CivilDate:
    """Calendar day before d.

    Parameters
    ----------
    d : CivilDate
        Valid date.

    Returns
    -------
    CivilDate
        Preceding day.
    """
    year, month, day = d

    if day > 1:
        return CivilDate(year, month, day - 1)
    if month > 1:
        return CivilDate(year, month - 1, days_in_month(year, month - 1))
    if year <= MIN_YEAR:
        raise InvalidDateTimeError(f"No day before {year:04d}-01-01")
    return CivilDate(year - 1, 12, 31)


def civil_add_seconds(dt: CivilDateTime, seconds: int) -> CivilDateTime:
    """Add whole seconds to a civil datetime with full carry.

    Parameters
    ----------
    dt : CivilDateTime
        Valid datetime (second <= 59).
    seconds : int
        Seconds to add, may be negative.

    Returns
    -------
    CivilDateTime
        Shifted datetime, the fraction is unchanged.

    Raises
    ------
    InvalidDateTimeError
        The result falls outside the years 1..9999.
    """
    dt = validate_datetime(dt)

    total = dt.hour * 3600 + dt.minute * 60 + dt.second + int(seconds)
    days, second_of_day = divmod(total, 86400)

    date = dt.date
    while days > 0:
        date = next_day(date)
        days -= 1
    while days < 0:
        date = previous_day(date)
        days += 1

    hour, rest = divmod(second_of_day, 3600)
    minute, second = divmod(rest, 60)

    return CivilDateTime(date, hour, minute, second, dt.frac_1e5)

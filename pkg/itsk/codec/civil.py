"""civil module.

Zone naive civil date and datetime values in the proleptic Gregorian
calendar. Both types are tuples, so comparing two values compares them
chronologically.
"""

from numbers import Integral
from typing import NamedTuple

from itsk.constants import FRAC_SCALE, MAX_YEAR, MIN_YEAR
from itsk.errors import InvalidDateError, InvalidDateTimeError


_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _all_integers(*fields) -> bool:
    return all(
        isinstance(f, Integral) and not isinstance(f, bool) for f in fields
    )


def is_leap_year(year: int) -> bool:
    """Gregorian leap year rule.

    Parameters
    ----------
    year : int
        Year.

    Returns
    -------
    bool
        True if year has a February 29.
    """
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    """Number of days of a month.

    Parameters
    ----------
    year : int
        Year.
    month : int
        Month, 1..12.

    Returns
    -------
    int
        Days in the month.
    """
    if month == 2 and is_leap_year(year):
        return 29
    return _DAYS_IN_MONTH[month - 1]


class CivilDate(NamedTuple):
    """Calendar date.

    Parameters
    ----------
    year : int
        Year, 1..9999.
    month : int
        Month, 1..12.
    day : int
        Day of month, valid for (year, month).
    """

    year: int
    month: int
    day: int

    def is_valid(self) -> bool:
        """Check the calendar invariants.

        Returns
        -------
        bool
            True if the date exists in the proleptic Gregorian calendar.
        """
        try:
            validate_date(self)
        except InvalidDateError:
            return False
        return True


class CivilDateTime(NamedTuple):
    """Civil datetime with 10 µs resolution.

    Parameters
    ----------
    date : CivilDate
        Calendar date.
    hour : int
        Hour, 0..23.
    minute : int
        Minute, 0..59.
    second : int
        Second, 0..60. 60 only represents an inserted UTC leap second.
    frac_1e5 : int
        Fraction of second in units of 10 µs, 0..99999.
    """

    date: CivilDate
    hour: int = 0
    minute: int = 0
    second: int = 0
    frac_1e5: int = 0

    @classmethod
    def of(
        cls,
        year: int,
        month: int,
        day: int,
        hour: int = 0,
        minute: int = 0,
        second: int = 0,
        frac_1e5: int = 0,
    ) -> "CivilDateTime":
        """Build a CivilDateTime from flat fields.

        Returns
        -------
        CivilDateTime
            New value (not validated).
        """
        return cls(
            CivilDate(year, month, day), hour, minute, second, frac_1e5
        )

    @property
    def year(self) -> int:
        """Year of the date."""
        return self.date.year

    @property
    def month(self) -> int:
        """Month of the date."""
        return self.date.month

    @property
    def day(self) -> int:
        """Day of the date."""
        return self.date.day

    def fields(self) -> tuple:
        """Flat tuple (year, month, day, hour, minute, second, frac_1e5)."""
        return (
            *self.date, self.hour, self.minute, self.second, self.frac_1e5
        )

    def truncated_to_seconds(self) -> "CivilDateTime":
        """Same instant with the fraction dropped."""
        return self._replace(frac_1e5=0)


def validate_date(d: CivilDate) -> CivilDate:
    """Validate a CivilDate.

    Parameters
    ----------
    d : CivilDate
        Date to validate.

    Returns
    -------
    CivilDate
        The same date with its fields as plain ints.

    Raises
    ------
    InvalidDateError
        Year, month or day out of range.
    """
    try:
        year, month, day = d
    except (TypeError, ValueError):
        raise InvalidDateError(f"Not a date: {d!r}")

    if not _all_integers(year, month, day):
        raise InvalidDateError(f"Date fields must be integers: {d!r}")
    year, month, day = int(year), int(month), int(day)

    if not MIN_YEAR <= year <= MAX_YEAR:
        raise InvalidDateError(f"Year {year} out of [{MIN_YEAR}, {MAX_YEAR}]")
    if not 1 <= month <= 12:
        raise InvalidDateError(f"Month {month} out of [1, 12]")
    if not 1 <= day <= days_in_month(year, month):
        raise InvalidDateError(
            f"Day {day} not valid for {year:04d}-{month:02d}"
        )

    return CivilDate(year, month, day)


def validate_datetime(
    dt: CivilDateTime, allow_leap_second: bool = False
) -> CivilDateTime:
    """Validate a CivilDateTime.

    Parameters
    ----------
    dt : CivilDateTime
        Datetime to validate.
    allow_leap_second : bool, optional
        Accept second = 60, by default False. Only the timescale module
        passes True.

    Returns
    -------
    CivilDateTime
        The same datetime with its fields as plain ints.

    Raises
    ------
    InvalidDateTimeError
        Any field out of range.
    """
    try:
        date = validate_date(dt.date)
    except InvalidDateError as error:
        raise InvalidDateTimeError(str(error))
    except AttributeError:
        raise InvalidDateTimeError(f"Not a datetime: {dt!r}")

    time_fields = (dt.hour, dt.minute, dt.second, dt.frac_1e5)
    if not _all_integers(*time_fields):
        raise InvalidDateTimeError(f"Time fields must be integers: {dt!r}")

    hour, minute, second, frac = (int(f) for f in time_fields)
    max_second = 60 if allow_leap_second else 59

    if not 0 <= hour <= 23:
        raise InvalidDateTimeError(f"Hour {hour} out of [0, 23]")
    if not 0 <= minute <= 59:
        raise InvalidDateTimeError(f"Minute {minute} out of [0, 59]")
    if not 0 <= second <= max_second:
        raise InvalidDateTimeError(
            f"Second {second} out of [0, {max_second}]"
        )
    if not 0 <= frac < FRAC_SCALE:
        raise InvalidDateTimeError(f"Fraction {frac} out of [0, 99999]")

    return CivilDateTime(date, hour, minute, second, frac)

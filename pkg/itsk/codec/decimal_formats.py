"""Decimal positional formats module.

A decimal positional timestamp composes its calendar fields by place value:
year * 10**10 + month * 10**8 + day * 10**6 + hour * 10**4 + minute * 10**2
+ second for the 14 digit Ts64Sec. Integer division and modulus extract or
truncate the fields, and the numeric order equals the chronological order.
"""

from numbers import Integral
from typing import Tuple, Union

from itsk.constants import FRAC_SCALE, MAX_YEAR
from itsk.errors import (
    InvalidDateError,
    InvalidDateTimeError,
    InvalidEncodingError,
    NonzeroFractionError,
)

from .civil import CivilDate, CivilDateTime, validate_date, validate_datetime
from .formats import TimestampFormat, as_format


_U64_MAX = (1 << 64) - 1


def _as_u64(t) -> int:
    """Plain int of an unsigned 64-bit candidate or InvalidEncodingError."""
    if isinstance(t, bool) or not isinstance(t, Integral):
        raise InvalidEncodingError(f"Not an integer timestamp: {t!r}")
    t = int(t)
    if not 0 <= t <= _U64_MAX:
        raise InvalidEncodingError(f"{t} out of the unsigned 64-bit range")
    return t


# =============================================================================
# Ts32: YYYYMMDD
# =============================================================================
def date_to_int(d: CivilDate) -> int:
    """Encode a calendar date as a Ts32 (YYYYMMDD).

    Parameters
    ----------
    d : CivilDate
        Date to encode.

    Returns
    -------
    int
        year * 10000 + month * 100 + day

    Raises
    ------
    InvalidDateError
        Month or day out of range, or day invalid for the month.
    """
    year, month, day = validate_date(d)
    return year * 10000 + month * 100 + day


def int_to_date(t: int) -> CivilDate:
    """Decode a Ts32 into a calendar date.

    Parameters
    ----------
    t : int
        Ts32 value.

    Returns
    -------
    CivilDate
        Decoded date.

    Raises
    ------
    InvalidEncodingError
        Digits do not form a valid date.
    """
    t = _as_u64(t)
    year, rest = divmod(t, 10000)

    if year > MAX_YEAR:
        raise InvalidEncodingError(f"{t} has more than 8 digits")

    try:
        return validate_date(CivilDate(year, rest // 100, rest % 100))
    except InvalidDateError as error:
        raise InvalidEncodingError(f"{t}: {error}")


# =============================================================================
# Ts64Sec: YYYYMMDDHHMMSS
# =============================================================================
def datetime_to_ts64sec(dt: CivilDateTime) -> int:
    """Encode a civil datetime as a Ts64Sec (YYYYMMDDHHMMSS).

    Parameters
    ----------
    dt : CivilDateTime
        Datetime to encode. Its fraction must be zero.

    Returns
    -------
    int
        year * 10**10 + month * 10**8 + day * 10**6 + hour * 10**4
        + minute * 10**2 + second

    Raises
    ------
    InvalidDateTimeError
        Any field out of range, second = 60 included.
    NonzeroFractionError
        The datetime carries a fraction of a second.
    """
    dt = validate_datetime(dt)

    if dt.frac_1e5 != 0:
        raise NonzeroFractionError(
            f"Ts64Sec has seconds resolution, got fraction {dt.frac_1e5}"
        )

    return _compose_seconds(dt)


def _compose_seconds(dt: CivilDateTime) -> int:
    year, month, day = dt.date
    return (
        year * 10**10
        + month * 10**8
        + day * 10**6
        + dt.hour * 10**4
        + dt.minute * 10**2
        + dt.second
    )


def _decompose_seconds(t: int, frac: int, allow_leap_second: bool):
    year, rest = divmod(t, 10**10)

    if year > MAX_YEAR:
        raise InvalidEncodingError(f"{t} has too many digits")

    month, rest = divmod(rest, 10**8)
    day, rest = divmod(rest, 10**6)
    hour, rest = divmod(rest, 10**4)
    minute, second = divmod(rest, 10**2)

    return validate_datetime(
        CivilDateTime.of(year, month, day, hour, minute, second, frac),
        allow_leap_second=allow_leap_second,
    )


def ts64sec_to_datetime(t: int) -> CivilDateTime:
    """Decode a Ts64Sec.

    Parameters
    ----------
    t : int
        Ts64Sec value.

    Returns
    -------
    CivilDateTime
        Decoded datetime, frac_1e5 = 0.

    Raises
    ------
    InvalidEncodingError
        Digit groups do not form a valid civil datetime (second = 60 is
        rejected).
    """
    t = _as_u64(t)
    try:
        return _decompose_seconds(t, 0, allow_leap_second=False)
    except InvalidDateTimeError as error:
        raise InvalidEncodingError(f"{t}: {error}")


# =============================================================================
# Ts64Frac: YYYYMMDDHHMMSSXXXXX
# =============================================================================
def datetime_to_ts64frac(
    dt: CivilDateTime, allow_leap_second: bool = False
) -> int:
    """Encode a civil datetime as a Ts64Frac (YYYYMMDDHHMMSSXXXXX).

    Parameters
    ----------
    dt : CivilDateTime
        Datetime to encode.
    allow_leap_second : bool, optional
        Accept second = 60, by default False. Reserved to the timescale
        module, which handles UTC leap seconds.

    Returns
    -------
    int
        Ts64Sec composition * 10**5 + frac_1e5.

    Raises
    ------
    InvalidDateTimeError
        Any field out of range.
    """
    dt = validate_datetime(dt, allow_leap_second=allow_leap_second)
    return _compose_seconds(dt) * FRAC_SCALE + dt.frac_1e5


def ts64frac_to_datetime(
    t: int, allow_leap_second: bool = False
) -> CivilDateTime:
    """Decode a Ts64Frac.

    Parameters
    ----------
    t : int
        Ts64Frac value.
    allow_leap_second : bool, optional
        Accept a second field of 60, by default False.

    Returns
    -------
    CivilDateTime
        Decoded datetime.

    Raises
    ------
    InvalidEncodingError
        Digit groups do not form a valid civil datetime.
    """
    t = _as_u64(t)
    seconds, frac = divmod(t, FRAC_SCALE)
    try:
        return _decompose_seconds(seconds, frac, allow_leap_second)
    except InvalidDateTimeError as error:
        raise InvalidEncodingError(f"{t}: {error}")


# =============================================================================
# Format dispatch
# =============================================================================
def encode(value: Union[CivilDate, CivilDateTime], fmt) -> int:
    """Encode a date or datetime in the given format.

    Parameters
    ----------
    value : CivilDate or CivilDateTime
        Value to encode. Ts32 accepts either (the time of a datetime is
        ignored only if it is midnight).
    fmt : str or TimestampFormat
        Target format.

    Returns
    -------
    int
        Encoded timestamp.
    """
    fmt = as_format(fmt)

    if fmt is TimestampFormat.TS32:
        if isinstance(value, CivilDateTime):
            if value[1:] != (0, 0, 0, 0):
                raise InvalidDateTimeError(
                    f"Ts32 cannot hold the time of {value}"
                )
            value = value.date
        return date_to_int(value)

    if isinstance(value, CivilDate):
        value = CivilDateTime(value)

    if fmt is TimestampFormat.TS64SEC:
        return datetime_to_ts64sec(value)
    return datetime_to_ts64frac(value)


def decode(t: int, fmt) -> Union[CivilDate, CivilDateTime]:
    """Decode a timestamp of the given format.

    Parameters
    ----------
    t : int
        Encoded timestamp.
    fmt : str or TimestampFormat
        Format of t.

    Returns
    -------
    CivilDate or CivilDateTime
        CivilDate for Ts32, CivilDateTime otherwise.
    """
    fmt = as_format(fmt)

    if fmt is TimestampFormat.TS32:
        return int_to_date(t)
    elif fmt is TimestampFormat.TS64SEC:
        return ts64sec_to_datetime(t)
    return ts64frac_to_datetime(t)


def is_valid(t: int, fmt) -> bool:
    """Check if t is a valid encoding of fmt.

    Parameters
    ----------
    t : int
        Candidate timestamp.
    fmt : str or TimestampFormat
        Declared format.

    Returns
    -------
    bool
        True if decode(t, fmt) succeeds.
    """
    try:
        decode(t, fmt)
    except InvalidEncodingError:
        return False
    return True


# =============================================================================
# Splitting and day keys
# =============================================================================
def split_date_time(t: int) -> Tuple[int, int]:
    """Split a Ts64Sec into a Ts32 date and an HHMMSS integer.

    Parameters
    ----------
    t : int
        Ts64Sec value.

    Returns
    -------
    Tuple[int, int]
        (t // 10**6, t % 10**6). date * 10**6 + time recomposes t.

    Raises
    ------
    InvalidEncodingError
        t is not a valid Ts64Sec.
    """
    ts64sec_to_datetime(t)
    return divmod(int(t), 10**6)


def day_key(t: int, fmt) -> int:
    """Ts32 day of a Ts64Sec or Ts64Frac timestamp.

    Parameters
    ----------
    t : int
        Timestamp (a numpy integer array is also accepted).
    fmt : str or TimestampFormat
        Format of t.

    Returns
    -------
    int
        YYYYMMDD day key.
    """
    return t // as_format(fmt).day_divisor


def day_bounds(day: int, fmt) -> Tuple[int, int]:
    """Inclusive timestamp bounds covering one Ts32 day.

    Parameters
    ----------
    day : int
        Ts32 day.
    fmt : str or TimestampFormat
        Ts64Sec or Ts64Frac.

    Returns
    -------
    Tuple[int, int]
        (first, last) timestamps of the day, suitable for an inclusive
        BETWEEN range.
    """
    int_to_date(day)
    fmt = as_format(fmt)
    if fmt is TimestampFormat.TS32:
        return day, day

    divisor = fmt.day_divisor
    last = 235959 * fmt.frac_multiplier + (fmt.frac_multiplier - 1)
    return day * divisor, day * divisor + last


def month_label(t: int) -> int:
    """YYYYMM label of a Ts32 (TradeDate / 100).

    Parameters
    ----------
    t : int
        Ts32 value.

    Returns
    -------
    int
        Six digit month label.
    """
    int_to_date(t)
    return int(t) // 100

"""Vectorized codec module.

numpy implementations of validation and conversion for whole columns. They
agree element by element with the scalar functions of decimal_formats.
"""

import numpy as np
from numpy.typing import NDArray

from itsk.constants import FRAC_SCALE, MAX_YEAR, MIN_YEAR
from itsk.errors import InvalidDateTimeError, InvalidEncodingError

from .formats import TimestampFormat, as_format


_DAYS_IN_MONTH = np.array(
    [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31], dtype=np.int64
)


def _fields(values: NDArray, fmt: TimestampFormat) -> dict:
    """Split encoded timestamps into int64 field arrays."""
    v = np.asarray(values, dtype=np.uint64)

    if fmt is TimestampFormat.TS32:
        return {
            "year": (v // np.uint64(10**4)).astype(np.int64),
            "month": ((v // np.uint64(100)) % np.uint64(100)).astype(np.int64),
            "day": (v % np.uint64(100)).astype(np.int64),
        }

    frac = np.zeros(v.shape, dtype=np.int64)
    if fmt is TimestampFormat.TS64FRAC:
        frac = (v % np.uint64(FRAC_SCALE)).astype(np.int64)
        v = v // np.uint64(FRAC_SCALE)

    def digits(place: int) -> NDArray:
        return ((v // np.uint64(place)) % np.uint64(100)).astype(np.int64)

    return {
        "year": (v // np.uint64(10**10)).astype(np.int64),
        "month": digits(10**8),
        "day": digits(10**6),
        "hour": digits(10**4),
        "minute": digits(10**2),
        "second": digits(1),
        "frac_1e5": frac,
    }


def valid_mask(values: NDArray, fmt) -> NDArray:
    """Element wise validity of encoded timestamps.

    Parameters
    ----------
    values : NDArray
        Unsigned integer timestamps.
    fmt : str or TimestampFormat
        Declared format.

    Returns
    -------
    NDArray
        Boolean array, True where the value is a valid encoding.
    """
    fmt = as_format(fmt)
    f = _fields(values, fmt)

    year, month, day = f["year"], f["month"], f["day"]

    leap = (year % 4 == 0) & ((year % 100 != 0) | (year % 400 == 0))
    month_ok = (month >= 1) & (month <= 12)
    dim = _DAYS_IN_MONTH[np.clip(month, 1, 12) - 1] + (leap & (month == 2))

    mask = (
        (year >= MIN_YEAR)
        & (year <= MAX_YEAR)
        & month_ok
        & (day >= 1)
        & (day <= dim)
    )

    if fmt is not TimestampFormat.TS32:
        mask &= (f["hour"] <= 23) & (f["minute"] <= 59) & (f["second"] <= 59)

    return mask


def encode_datetime64(times: NDArray, fmt) -> NDArray:
    """Encode numpy datetime64 instants as integer timestamps.

    Parameters
    ----------
    times : NDArray
        datetime64 array (any unit). Instants finer than the format are
        truncated.
    fmt : str or TimestampFormat
        Target format.

    Returns
    -------
    NDArray
        uint64 array of encoded timestamps.

    Raises
    ------
    InvalidDateTimeError
        An instant falls outside the years 1..9999.
    """
    fmt = as_format(fmt)
    t = np.asarray(times).astype("datetime64[us]")

    years = t.astype("datetime64[Y]")
    months = t.astype("datetime64[M]")
    days = t.astype("datetime64[D]")

    year = years.astype(np.int64) + 1970
    if t.size and (year.min() < MIN_YEAR or year.max() > MAX_YEAR):
        raise InvalidDateTimeError("Instants outside the years 1..9999")

    month = (months - years).astype(np.int64) + 1
    day = (days - months).astype("timedelta64[D]").astype(np.int64) + 1

    if fmt is TimestampFormat.TS32:
        return (year * 10**4 + month * 100 + day).astype(np.uint64)

    micros = (t - days).astype("timedelta64[us]").astype(np.int64)
    seconds_of_day, micro = np.divmod(micros, 10**6)
    hour, rest = np.divmod(seconds_of_day, 3600)
    minute, second = np.divmod(rest, 60)

    encoded = (
        year.astype(np.uint64) * np.uint64(10**10)
        + month.astype(np.uint64) * np.uint64(10**8)
        + day.astype(np.uint64) * np.uint64(10**6)
        + hour.astype(np.uint64) * np.uint64(10**4)
        + minute.astype(np.uint64) * np.uint64(10**2)
        + second.astype(np.uint64)
    )

    if fmt is TimestampFormat.TS64FRAC:
        encoded = encoded * np.uint64(FRAC_SCALE) + (micro // 10).astype(
            np.uint64
        )

    return encoded


def decode_to_datetime64(values: NDArray, fmt) -> NDArray:
    """Decode integer timestamps into numpy datetime64 instants.

    Parameters
    ----------
    values : NDArray
        Unsigned integer timestamps.
    fmt : str or TimestampFormat
        Format of values.

    Returns
    -------
    NDArray
        datetime64[us] array (datetime64[D] for Ts32).

    Raises
    ------
    InvalidEncodingError
        Some value is not a valid encoding of fmt.
    """
    fmt = as_format(fmt)
    values = np.asarray(values, dtype=np.uint64)
    mask = valid_mask(values, fmt)

    if not mask.all():
        bad = values[~mask][0]
        raise InvalidEncodingError(f"{int(bad)} is not a valid {fmt.value}")

    f = _fields(values, fmt)

    months = (f["year"] - 1970).astype("datetime64[Y]").astype(
        "datetime64[M]"
    ) + (f["month"] - 1).astype("timedelta64[M]")
    days = months.astype("datetime64[D]") + (f["day"] - 1).astype(
        "timedelta64[D]"
    )

    if fmt is TimestampFormat.TS32:
        return days

    micros = (
        (f["hour"] * 3600 + f["minute"] * 60 + f["second"]) * 10**6
        + f["frac_1e5"] * 10
    )
    return days.astype("datetime64[us]") + micros.astype("timedelta64[us]")

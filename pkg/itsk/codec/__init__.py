"""Codec module.

Integer timestamp formats: validation, encoding, decoding and truncation.
"""

from .civil import (
    CivilDate,
    CivilDateTime,
    days_in_month,
    is_leap_year,
    validate_date,
    validate_datetime,
)
from .decimal_formats import (
    date_to_int,
    datetime_to_ts64frac,
    datetime_to_ts64sec,
    day_bounds,
    day_key,
    decode,
    encode,
    int_to_date,
    is_valid,
    month_label,
    split_date_time,
    ts64frac_to_datetime,
    ts64sec_to_datetime,
)
from .formats import UNITS, TimestampFormat, as_format
from .packed import pack_ts64, packed_fraction, unpack_ts64
from .truncate import truncate
from .vectorized import decode_to_datetime64, encode_datetime64, valid_mask


__all__ = [
    "CivilDate",
    "CivilDateTime",
    "days_in_month",
    "is_leap_year",
    "validate_date",
    "validate_datetime",
    "date_to_int",
    "datetime_to_ts64frac",
    "datetime_to_ts64sec",
    "day_bounds",
    "day_key",
    "decode",
    "encode",
    "int_to_date",
    "is_valid",
    "month_label",
    "split_date_time",
    "ts64frac_to_datetime",
    "ts64sec_to_datetime",
    "UNITS",
    "TimestampFormat",
    "as_format",
    "pack_ts64",
    "packed_fraction",
    "unpack_ts64",
    "truncate",
    "decode_to_datetime64",
    "encode_datetime64",
    "valid_mask",
]

"""Timescale module.

Leap second table management and UTC <-> TAI conversion over Ts64Frac
integers.
"""

from .civil_arithmetic import civil_add_seconds, next_day, previous_day
from .conversions import tai_to_utc, utc_to_tai
from .leap_table import (
    BUILTIN_LEAP_TABLE,
    LeapSecondTable,
    default_leap_table,
    get_leap_table,
    install_leap_table,
    load_leap_table,
    read_leap_table,
)


__all__ = [
    "civil_add_seconds",
    "next_day",
    "previous_day",
    "tai_to_utc",
    "utc_to_tai",
    "BUILTIN_LEAP_TABLE",
    "LeapSecondTable",
    "default_leap_table",
    "get_leap_table",
    "install_leap_table",
    "load_leap_table",
    "read_leap_table",
]

"""Timestamp formats module."""

from enum import Enum

from itsk.constants import (
    FRAC_SCALE,
    TS32_DATE_PLACES,
    TS64FRAC_PLACES,
    TS64SEC_PLACES,
)


# Coarse to fine, every truncation unit known to the codec.
UNITS = ("month", "day", "hour", "minute", "second")


class TimestampFormat(str, Enum):
    """Integer timestamp formats.

    The format of a column is always declared, never inferred from the
    magnitude of its values.

    Attributes
    ----------
    TS32 : str
        32-bit YYYYMMDD date.
    TS64SEC : str
        64-bit YYYYMMDDHHMMSS datetime, seconds resolution.
    TS64FRAC : str
        64-bit YYYYMMDDHHMMSSXXXXX datetime, 10 µs resolution.
    """

    TS32 = "ts32"
    TS64SEC = "ts64sec"
    TS64FRAC = "ts64frac"

    @property
    def places(self) -> dict:
        """Decimal place value of each field of the format."""
        return {
            TimestampFormat.TS32: TS32_DATE_PLACES,
            TimestampFormat.TS64SEC: TS64SEC_PLACES,
            TimestampFormat.TS64FRAC: TS64FRAC_PLACES,
        }[self]

    @property
    def finest_unit(self) -> str:
        """Finest truncation unit the format resolves."""
        if self is TimestampFormat.TS32:
            return "day"
        return "second"

    @property
    def day_divisor(self) -> int:
        """Divisor that turns a timestamp into its YYYYMMDD day."""
        return self.places["day"]

    @property
    def tag(self) -> int:
        """Segment file format tag (1 = Ts64Sec, 2 = Ts64Frac)."""
        if self is TimestampFormat.TS32:
            raise ValueError("Ts32 columns are not stored in segments.")
        return 1 if self is TimestampFormat.TS64SEC else 2

    @classmethod
    def from_tag(cls, tag: int) -> "TimestampFormat":
        """Inverse of the tag property.

        Parameters
        ----------
        tag : int
            Segment file format tag.

        Returns
        -------
        TimestampFormat
            Format of the tag.
        """
        if tag == 1:
            return cls.TS64SEC
        elif tag == 2:
            return cls.TS64FRAC
        raise ValueError(f"Unknown format tag: {tag}")

    @property
    def frac_multiplier(self) -> int:
        """Fraction units per second stored in the format."""
        return FRAC_SCALE if self is TimestampFormat.TS64FRAC else 1


def as_format(fmt) -> TimestampFormat:
    """Coerce a string or TimestampFormat into a TimestampFormat.

    Parameters
    ----------
    fmt : str or TimestampFormat
        Format name: 'ts32', 'ts64sec' or 'ts64frac'.

    Returns
    -------
    TimestampFormat
        The format.
    """
    try:
        return TimestampFormat(fmt)
    except ValueError:
        raise ValueError(
            f"Format: {fmt} not valid, use: 'ts32', 'ts64sec' or 'ts64frac'"
        )

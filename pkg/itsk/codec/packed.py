"""Binary bit-field layout module.

A PackedTs64 stores, from the most significant byte down: year within the
century, month, day, hour, minute, second (one byte each) and the fraction
of the second in the low 16 bits, in units of 1/65536 s. The century base
is codec configuration, it is not stored in the value.
"""

from fractions import Fraction

from itsk.constants import (
    DEFAULT_CENTURY_BASE,
    FRAC_SCALE,
    PACKED_FRAC_SCALE,
    PACKED_LAYOUT,
)
from itsk.errors import (
    InvalidDateTimeError,
    InvalidEncodingError,
    YearOutOfCenturyError,
)

from .civil import CivilDateTime, validate_datetime
from .decimal_formats import _as_u64


def frac_1e5_to_packed(frac_1e5: int) -> int:
    """Convert 10 µs units to 1/65536 s units, round half to even.

    Parameters
    ----------
    frac_1e5 : int
        Fraction in 10 µs units, 0..99999.

    Returns
    -------
    int
        Fraction in 1/65536 s units, 0..65535.
    """
    return round(Fraction(frac_1e5 * PACKED_FRAC_SCALE, FRAC_SCALE))


def packed_to_frac_1e5(fraction: int) -> int:
    """Convert 1/65536 s units to the nearest 10 µs unit.

    Parameters
    ----------
    fraction : int
        Fraction in 1/65536 s units, 0..65535.

    Returns
    -------
    int
        Fraction in 10 µs units. frac_1e5_to_packed inverts it exactly.
    """
    return round(Fraction(fraction * FRAC_SCALE, PACKED_FRAC_SCALE))


def pack_ts64(
    dt: CivilDateTime, century_base: int = DEFAULT_CENTURY_BASE
) -> int:
    """Pack a civil datetime in the binary bit-field layout.

    Parameters
    ----------
    dt : CivilDateTime
        Datetime to pack.
    century_base : int, optional
        First year of the representable century, by default 2000.

    Returns
    -------
    int
        PackedTs64 value.

    Raises
    ------
    InvalidDateTimeError
        Any field out of range.
    YearOutOfCenturyError
        dt.year outside [century_base, century_base + 99].
    """
    dt = validate_datetime(dt)

    year_in_century = dt.year - century_base
    if not 0 <= year_in_century <= 99:
        raise YearOutOfCenturyError(
            f"Year {dt.year} out of [{century_base}, {century_base + 99}]"
        )

    fields = {
        "year": year_in_century,
        "month": dt.month,
        "day": dt.day,
        "hour": dt.hour,
        "minute": dt.minute,
        "second": dt.second,
        "fraction": frac_1e5_to_packed(dt.frac_1e5),
    }

    packed = 0
    for name, (offset, _) in PACKED_LAYOUT.items():
        packed |= fields[name] << offset

    return packed


def _unpack_fields(p: int) -> dict:
    p = _as_u64(p)
    return {
        name: (p >> offset) & ((1 << width) - 1)
        for name, (offset, width) in PACKED_LAYOUT.items()
    }


def unpack_ts64(
    p: int, century_base: int = DEFAULT_CENTURY_BASE
) -> CivilDateTime:
    """Unpack a PackedTs64.

    Parameters
    ----------
    p : int
        PackedTs64 value.
    century_base : int, optional
        Century base used when packing, by default 2000.

    Returns
    -------
    CivilDateTime
        Unpacked datetime. The fraction is converted to the nearest 10 µs
        unit, packing it again restores the same 1/65536 s field.

    Raises
    ------
    InvalidEncodingError
        A field out of its calendar range (the all zero value has month 0).
    """
    fields = _unpack_fields(p)

    if fields["year"] > 99:
        raise InvalidEncodingError(
            f"{p:#018x}: year field {fields['year']} out of [0, 99]"
        )

    try:
        return validate_datetime(
            CivilDateTime.of(
                century_base + fields["year"],
                fields["month"],
                fields["day"],
                fields["hour"],
                fields["minute"],
                fields["second"],
                packed_to_frac_1e5(fields["fraction"]),
            )
        )
    except InvalidDateTimeError as error:
        raise InvalidEncodingError(f"{p:#018x}: {error}")


def packed_fraction(p: int) -> int:
    """Raw 16-bit fraction field of a PackedTs64.

    Parameters
    ----------
    p : int
        PackedTs64 value.

    Returns
    -------
    int
        Fraction in 1/65536 s units.
    """
    return _unpack_fields(p)["fraction"]

import pytest

from itsk.codec import CivilDateTime, pack_ts64, packed_fraction, unpack_ts64
from itsk.errors import InvalidEncodingError, YearOutOfCenturyError


@pytest.mark.codec
def test_pack_bit_layout():
    dt = CivilDateTime.of(2023, 10, 27, 13, 34, 55)

    assert pack_ts64(dt) == 0x170A1B0D22370000
    assert unpack_ts64(0x170A1B0D22370000) == dt


@pytest.mark.codec
def test_century_base():
    dt = CivilDateTime.of(1999, 12, 31, 23, 59, 59)

    with pytest.raises(YearOutOfCenturyError):
        pack_ts64(dt)

    p = pack_ts64(dt, century_base=1900)
    assert p >> 56 == 99
    assert unpack_ts64(p, century_base=1900) == dt

    with pytest.raises(YearOutOfCenturyError):
        pack_ts64(CivilDateTime.of(2100, 1, 1))


@pytest.mark.codec
def test_all_zero_is_invalid():
    with pytest.raises(InvalidEncodingError):
        unpack_ts64(0)


@pytest.mark.codec
@pytest.mark.parametrize(
    "p",
    [
        0x640A1B0D22370000,  # year field 100
        0x170D1B0D22370000,  # month 13
        0x17021E0D22370000,  # February 30
        0x170A1B1822370000,  # hour 24
        0x170A1B0D3C370000,  # minute 60
        0x170A1B0D223C0000,  # second 60
    ],
)
def test_unpack_invalid_fields(p):
    with pytest.raises(InvalidEncodingError):
        unpack_ts64(p)


@pytest.mark.codec
@pytest.mark.parametrize(
    "frac_1e5, fraction",
    [(0, 0), (50000, 32768), (25000, 16384), (99999, 65535)],
)
def test_fraction_conversion(frac_1e5, fraction):
    dt = CivilDateTime.of(2023, 1, 1, 0, 0, 0, frac_1e5)
    p = pack_ts64(dt)

    assert packed_fraction(p) == fraction
    assert pack_ts64(unpack_ts64(p)) == p


@pytest.mark.codec
def test_packed_order_is_chronological():
    a = pack_ts64(CivilDateTime.of(2023, 10, 27, 13, 34, 55))
    b = pack_ts64(CivilDateTime.of(2023, 10, 27, 13, 34, 55, 1))
    c = pack_ts64(CivilDateTime.of(2023, 11, 1))

    assert a < b < c

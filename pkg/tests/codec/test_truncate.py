import numpy as np

import pytest

from itsk.codec import truncate
from itsk.errors import UnitFinerThanFormatError


trials = [
    (20231027, "month", "ts32", 202310),
    (20231027, "day", "ts32", 20231027),
    (20230101123455, "hour", "ts64sec", 20230101120000),
    (20230101120000, "hour", "ts64sec", 20230101120000),
    (20230101123455, "minute", "ts64sec", 20230101123400),
    (20230101123455, "day", "ts64sec", 20230101000000),
    (20230101123455, "month", "ts64sec", 20230100000000),
    (20230101123455, "second", "ts64sec", 20230101123455),
    (2023010112345512345, "second", "ts64frac", 2023010112345500000),
    (2023010112345512345, "hour", "ts64frac", 2023010112000000000),
]


@pytest.mark.codec
@pytest.mark.parametrize("t, unit, fmt, expected", trials)
def test_truncate(t, unit, fmt, expected):
    assert truncate(t, unit, fmt) == expected

    # Idempotent on bin lower bounds.
    if not (fmt == "ts32" and unit == "month"):
        assert truncate(expected, unit, fmt) == expected


@pytest.mark.codec
@pytest.mark.parametrize("unit", ["hour", "minute", "second"])
def test_truncate_finer_than_ts32(unit):
    with pytest.raises(UnitFinerThanFormatError):
        truncate(20231027, unit, "ts32")


@pytest.mark.codec
def test_truncate_unknown_unit():
    with pytest.raises(ValueError):
        truncate(20230101123455, "week", "ts64sec")


@pytest.mark.codec
def test_truncate_array():
    ts = np.array([20230101120001, 20230101123000, 20230101130000], np.uint64)

    bins = truncate(ts, "hour", "ts64sec")

    assert bins.dtype == np.uint64
    assert bins.tolist() == [20230101120000, 20230101120000, 20230101130000]

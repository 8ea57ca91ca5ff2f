import numpy as np

import pytest

from itsk.codec import (
    decode_to_datetime64,
    encode_datetime64,
    is_valid,
    valid_mask,
)
from itsk.errors import InvalidDateTimeError, InvalidEncodingError


@pytest.mark.codec
@pytest.mark.parametrize("fmt", ["ts32", "ts64sec", "ts64frac"])
def test_valid_mask_agrees_with_scalar(fmt):
    rng = np.random.default_rng(3)
    digits = {"ts32": 8, "ts64sec": 14, "ts64frac": 19}[fmt]

    # Random digit strings are mostly invalid, mix in real instants.
    values = rng.integers(0, 10 ** (digits - 1), 2000, dtype=np.int64)
    values += 10 ** (digits - 1) * 2
    times = np.datetime64("2020-01-01T00:00:00", "us") + rng.integers(
        0, 10**14, 2000
    ).astype("timedelta64[us]")
    values = np.concatenate(
        [values.astype(np.uint64), encode_datetime64(times, fmt)]
    )

    mask = valid_mask(values, fmt)

    assert mask.tolist() == [is_valid(int(v), fmt) for v in values]
    assert mask[2000:].all()


@pytest.mark.codec
def test_encode_datetime64():
    times = np.array(
        ["2023-10-27T13:34:55.123456", "2024-02-29T00:00:00"],
        dtype="datetime64[us]",
    )

    assert encode_datetime64(times, "ts32").tolist() == [20231027, 20240229]
    assert encode_datetime64(times, "ts64sec").tolist() == [
        20231027133455,
        20240229000000,
    ]
    assert encode_datetime64(times, "ts64frac").tolist() == [
        2023102713345512345,
        2024022900000000000,
    ]


@pytest.mark.codec
def test_decode_to_datetime64():
    values = np.array([2023102713345512340, 2024022900000000000], np.uint64)

    times = decode_to_datetime64(values, "ts64frac")

    assert times.dtype == np.dtype("datetime64[us]")
    assert times[0] == np.datetime64("2023-10-27T13:34:55.123400")
    assert times[1] == np.datetime64("2024-02-29T00:00:00")

    days = decode_to_datetime64(np.array([20231027], np.uint64), "ts32")
    assert days[0] == np.datetime64("2023-10-27")


@pytest.mark.codec
def test_decode_to_datetime64_invalid():
    with pytest.raises(InvalidEncodingError):
        decode_to_datetime64(np.array([20231301000000], np.uint64), "ts64sec")


@pytest.mark.codec
def test_encode_datetime64_out_of_years():
    with pytest.raises(InvalidDateTimeError):
        encode_datetime64(
            np.array(["10000-01-01"], dtype="datetime64[D]"), "ts64sec"
        )

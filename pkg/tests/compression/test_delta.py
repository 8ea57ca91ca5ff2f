import numpy as np

import pytest

from hypothesis import given
from hypothesis import strategies as st

from itsk.compression import (
    DeltaStream,
    as_uint64_array,
    delta_decode,
    delta_encode,
    unzigzag,
    unzigzag_array,
    zigzag,
    zigzag_array,
)
from itsk.errors import EmptyInputError, InvalidEncodingError


# =============================================================================
# Delta encoding
# =============================================================================
trials = [
    ([20230101120000, 20230101120001, 20230101120003], [1, 2]),
    ([20230101125959, 20230101130000], [4041]),
    ([20230101120000], []),
    ([5, 3, 10], [-2, 7]),
]


@pytest.mark.compression
@pytest.mark.parametrize("ts, deltas", trials)
def test_delta_encode(ts, deltas):
    stream = delta_encode(ts)

    assert stream.base == ts[0]
    assert stream.deltas.tolist() == deltas
    assert delta_decode(stream).tolist() == ts


@pytest.mark.compression
def test_delta_encode_empty():
    with pytest.raises(EmptyInputError):
        delta_encode([])


@pytest.mark.compression
def test_delta_wraparound():
    ts = [0, (1 << 64) - 1, 0]

    stream = delta_encode(ts)

    assert stream.deltas.tolist() == [-1, 1]
    assert delta_decode(stream).tolist() == ts


@pytest.mark.compression
def test_delta_decode_accepts_a_plain_stream():
    assert delta_decode(DeltaStream(10, [1, 1, -2])).tolist() == [
        10,
        11,
        12,
        10,
    ]


@pytest.mark.compression
@pytest.mark.parametrize(
    "ts",
    [[1.5, 2], [True, 1], [-1, 2], [1 << 64], np.array([1.0, 2.0])],
)
def test_as_uint64_array_rejects(ts):
    with pytest.raises(InvalidEncodingError):
        as_uint64_array(ts)


@pytest.mark.compression
def test_as_uint64_array_numpy():
    assert as_uint64_array(np.array([1, 2], np.int32)).dtype == np.uint64

    with pytest.raises(InvalidEncodingError):
        as_uint64_array(np.array([1, -2], np.int64))


# =============================================================================
# Zigzag
# =============================================================================
trials = [
    (0, 0),
    (-1, 1),
    (1, 2),
    (-2, 3),
    (1 << 31, 1 << 32),
    ((1 << 63) - 1, (1 << 64) - 2),
    (-(1 << 63), (1 << 64) - 1),
]


@pytest.mark.compression
@pytest.mark.parametrize("d, z", trials)
def test_zigzag(d, z):
    assert zigzag(d) == z
    assert unzigzag(z) == d

    assert zigzag_array(np.array([d], np.int64)).tolist() == [z]
    assert unzigzag_array(np.array([z], np.uint64)).tolist() == [d]


@pytest.mark.compression
def test_zigzag_range():
    with pytest.raises(InvalidEncodingError):
        zigzag(1 << 63)

    with pytest.raises(InvalidEncodingError):
        unzigzag(-1)


@pytest.mark.compression
@given(st.integers(min_value=-(1 << 63), max_value=(1 << 63) - 1))
def test_zigzag_scalar_and_array_agree(d):
    z = zigzag_array(np.array([d], np.int64))[0]

    assert int(z) == zigzag(d)
    assert unzigzag(int(z)) == d

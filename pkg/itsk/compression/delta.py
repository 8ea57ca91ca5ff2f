"""Delta and zigzag module.

Deltas are taken on the raw integer encodings with 64-bit wraparound, so any
sequence of unsigned 64-bit values round trips, sorted or not.
"""

from numbers import Integral
from typing import NamedTuple, Sequence, Union

import numpy as np

from itsk.errors import EmptyInputError, InvalidEncodingError


_MASK64 = (1 << 64) - 1
_ONE = np.uint64(1)
_SIGN_SHIFT = np.int64(63)


class DeltaStream(NamedTuple):
    """First value and successive differences of a sequence.

    Parameters
    ----------
    base : int
        First value.
    deltas : numpy.ndarray
        int64 differences ts[i + 1] - ts[i] (modulo 2**64).
    """

    base: int
    deltas: np.ndarray


def as_uint64_array(ts: Union[Sequence[int], np.ndarray]) -> np.ndarray:
    """Coerce a sequence of unsigned 64-bit integers to a numpy array.

    Parameters
    ----------
    ts : Sequence[int] or numpy.ndarray
        Integer values in 0..2**64 - 1.

    Returns
    -------
    numpy.ndarray
        One dimensional uint64 array.

    Raises
    ------
    InvalidEncodingError
        A value is not an integer or does not fit in 64 unsigned bits.
    """
    if isinstance(ts, np.ndarray):
        arr = ts.ravel()
    else:
        ts = list(ts)
        if not all(isinstance(t, Integral) and not isinstance(t, bool)
                   for t in ts):
            raise InvalidEncodingError("Timestamps must be integers")
        if any(t < 0 or t > _MASK64 for t in ts):
            raise InvalidEncodingError("Timestamps must fit in 64 bits")
        return np.array([int(t) for t in ts], dtype=np.uint64)

    if arr.dtype.kind == "u":
        return arr.astype(np.uint64, copy=False)
    if arr.dtype.kind == "i":
        if arr.size and arr.min() < 0:
            raise InvalidEncodingError("Timestamps must be non negative")
        return arr.astype(np.uint64)

    raise InvalidEncodingError(f"Integer array expected, got {arr.dtype}")


def delta_encode(ts: Union[Sequence[int], np.ndarray]) -> DeltaStream:
    """Delta encode a timestamp column.

    Parameters
    ----------
    ts : Sequence[int] or numpy.ndarray
        Non empty sequence of unsigned 64-bit integers.

    Returns
    -------
    DeltaStream
        base = ts[0] and deltas[i] = ts[i + 1] - ts[i].

    Raises
    ------
    EmptyInputError
        ts is empty.
    """
    arr = as_uint64_array(ts)

    if arr.size == 0:
        raise EmptyInputError("Cannot delta encode an empty sequence")

    return DeltaStream(int(arr[0]), np.diff(arr).view(np.int64))


def delta_decode(stream: DeltaStream) -> np.ndarray:
    """Rebuild a column from its DeltaStream by prefix sum.

    Parameters
    ----------
    stream : DeltaStream
        Encoded column.

    Returns
    -------
    numpy.ndarray
        uint64 column, first value equal to stream.base.
    """
    deltas = np.asarray(stream.deltas, dtype=np.int64).view(np.uint64)

    out = np.empty(deltas.size + 1, dtype=np.uint64)
    out[0] = stream.base
    np.cumsum(deltas, out=out[1:])
    out[1:] += out[0]

    return out


def zigzag(d: int) -> int:
    """Map a signed 64-bit integer to an unsigned one.

    Small magnitudes of either sign map to small values:
    0 -> 0, -1 -> 1, 1 -> 2, -2 -> 3, ...

    Parameters
    ----------
    d : int
        Value in -2**63..2**63 - 1.

    Returns
    -------
    int
        Zigzagged value in 0..2**64 - 1.
    """
    d = int(d)
    if not -(1 << 63) <= d < (1 << 63):
        raise InvalidEncodingError(f"{d} does not fit in 64 signed bits")
    return ((d << 1) ^ (d >> 63)) & _MASK64


def unzigzag(z: int) -> int:
    """Inverse of zigzag."""
    z = int(z)
    if not 0 <= z <= _MASK64:
        raise InvalidEncodingError(f"{z} does not fit in 64 unsigned bits")
    return (z >> 1) ^ -(z & 1)


def zigzag_array(d: np.ndarray) -> np.ndarray:
    """Vectorized zigzag, int64 -> uint64."""
    d = np.asarray(d, dtype=np.int64)
    return (d.view(np.uint64) << _ONE) ^ (d >> _SIGN_SHIFT).view(np.uint64)


def unzigzag_array(z: np.ndarray) -> np.ndarray:
    """Vectorized unzigzag, uint64 -> int64."""
    z = np.asarray(z, dtype=np.uint64)
    sign = np.uint64(0) - (z & _ONE)
    return ((z >> _ONE) ^ sign).view(np.int64)

"""truncate module."""

from typing import Union

import numpy as np
from numpy.typing import NDArray

from itsk.errors import UnitFinerThanFormatError

from .formats import UNITS, TimestampFormat, as_format


def truncate(
    t: Union[int, NDArray], unit: str, fmt
) -> Union[int, NDArray]:
    """Truncate timestamps to the lower bound of their unit bin.

    Integer division then multiplication by the place value of the unit,
    e.g. (t // 10**4) * 10**4 is the hour bin of a Ts64Sec. The month bin
    of a Ts32 is the six digit YYYYMM label (t // 100).

    Parameters
    ----------
    t : int or NDArray
        Timestamp or unsigned integer array of timestamps.
    unit : str
        'month', 'day', 'hour', 'minute' or 'second'.
    fmt : str or TimestampFormat
        Format of t.

    Returns
    -------
    int or NDArray
        Bin label (same type as t).

    Raises
    ------
    UnitFinerThanFormatError
        unit is finer than the format resolution.
    """
    fmt = as_format(fmt)

    if unit not in UNITS:
        raise ValueError(
            f"Unit: {unit} not valid, use: {', '.join(map(repr, UNITS))}"
        )

    if UNITS.index(unit) > UNITS.index(fmt.finest_unit):
        raise UnitFinerThanFormatError(
            f"Unit '{unit}' is finer than the {fmt.value} resolution"
        )

    if fmt is TimestampFormat.TS32 and unit == "month":
        return t // 100

    place = fmt.places[unit]

    if isinstance(t, np.ndarray):
        place = np.asarray(place, dtype=t.dtype)

    return (t // place) * place

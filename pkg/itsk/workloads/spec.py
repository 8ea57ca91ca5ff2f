"""Workload specification module."""

from dataclasses import dataclass
from numbers import Integral, Real
from typing import Optional, Union

import numpy as np

from itsk.codec import (
    CivilDateTime,
    TimestampFormat,
    as_format,
    validate_datetime,
)
from itsk.errors import InvalidDateTimeError, InvalidSpecError


KINDS = ("hft", "cdr", "iot")


@dataclass(frozen=True)
class WorkloadSpec:
    """Synthetic workload description.

    Parameters
    ----------
    kind : str
        'hft' (bursty trades from one source), 'cdr' (calls with a daily
        intensity cycle) or 'iot' (devices reporting at a fixed cadence).
    start : CivilDateTime
        First instant of the workload.
    duration : float
        Length in seconds; events fall in [start, start + duration).
    rate : float, optional
        Mean events per second. For 'iot' it may be omitted when cadence is
        given (rate = devices / cadence).
    seed : int, optional
        Seed of the PCG64 generator, by default 0.
    devices : int, optional
        Number of 'iot' devices, by default 1.
    cadence : float, optional
        Seconds between two reports of one 'iot' device, by default
        devices / rate.
    fmt : str or TimestampFormat, optional
        Output format, by default 'ts64sec'.
    """

    kind: str
    start: CivilDateTime
    duration: float
    rate: Optional[float] = None
    seed: int = 0
    devices: int = 1
    cadence: Optional[float] = None
    fmt: Union[str, TimestampFormat] = TimestampFormat.TS64SEC

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpecError(
                f"Kind: {self.kind!r} not valid, use: {', '.join(KINDS)}"
            )

        try:
            object.__setattr__(self, "start", validate_datetime(self.start))
        except InvalidDateTimeError as error:
            raise InvalidSpecError(f"Bad start: {error}")

        try:
            fmt = as_format(self.fmt)
        except ValueError as error:
            raise InvalidSpecError(str(error))
        if fmt is TimestampFormat.TS32:
            raise InvalidSpecError("Workloads emit Ts64Sec or Ts64Frac")
        object.__setattr__(self, "fmt", fmt)

        if not _positive(self.duration):
            raise InvalidSpecError(f"Duration must be > 0: {self.duration}")

        if isinstance(self.seed, bool) or not isinstance(self.seed, Integral):
            raise InvalidSpecError(f"Seed must be an integer: {self.seed!r}")
        if not 0 <= self.seed < 1 << 64:
            raise InvalidSpecError(f"Seed must fit in 64 bits: {self.seed}")

        if self.kind == "iot":
            if isinstance(self.devices, bool) or not isinstance(
                self.devices, Integral
            ):
                raise InvalidSpecError(f"Bad device count {self.devices!r}")
            if self.devices < 1:
                raise InvalidSpecError(f"Device count < 1: {self.devices}")
            if self.cadence is None:
                if not _positive(self.rate):
                    raise InvalidSpecError("iot needs a cadence or a rate")
                object.__setattr__(
                    self, "cadence", self.devices / float(self.rate)
                )
            elif not _positive(self.cadence):
                raise InvalidSpecError(f"Cadence must be > 0: {self.cadence}")
            object.__setattr__(
                self, "rate", self.devices / float(self.cadence)
            )
        elif not _positive(self.rate):
            raise InvalidSpecError(f"Rate must be > 0: {self.rate}")

    @property
    def start64(self) -> np.datetime64:
        """Start as a numpy datetime64[us]."""
        s = self.start
        iso = (
            f"{s.year:04d}-{s.month:02d}-{s.day:02d}"
            f"T{s.hour:02d}:{s.minute:02d}:{s.second:02d}"
        )
        return np.datetime64(iso, "us") + np.timedelta64(
            s.frac_1e5 * 10, "us"
        )

    @property
    def duration_us(self) -> int:
        """Duration in microseconds."""
        return int(round(float(self.duration) * 10**6))


def _positive(x) -> bool:
    return (
        isinstance(x, Real)
        and not isinstance(x, bool)
        and np.isfinite(x)
        and x > 0
    )

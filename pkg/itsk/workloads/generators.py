"""Synthetic workload generators.

Every generator draws from numpy's PCG64 bit generator seeded with
WorkloadSpec.seed, in a fixed draw order, so a spec always yields the same
records. Instants are produced as microsecond offsets from the start and
encoded with codec.encode_datetime64, which truncates them to the format's
resolution.
"""

from typing import Iterator, Tuple

import numpy as np
from numpy.random import PCG64, Generator

from itsk.codec import encode_datetime64
from itsk.constants import CDR_HOURLY_MULTIPLIERS
from itsk.errors import InvalidDateTimeError, InvalidSpecError
from itsk.ingest import Record

from .spec import WorkloadSpec


# Share of trades arriving in bursts and how much shorter their gaps are.
# CALM_FACTOR keeps the mean gap at 1 / rate.
BURST_SHARE = 0.3
BURST_FACTOR = 0.1
CALM_FACTOR = (1 - BURST_SHARE * BURST_FACTOR) / (1 - BURST_SHARE)

MEAN_CALL_SECONDS = 180.0


def _rng(spec: WorkloadSpec) -> Generator:
    return Generator(PCG64(spec.seed))


def _arrival_offsets(rng: Generator, draw_gaps, duration_us: int):
    """Cumulate gaps (seconds) drawn in chunks until duration is covered."""
    chunks, elapsed = [], 0.0
    duration = duration_us / 10**6

    while elapsed < duration:
        gaps = draw_gaps()
        offsets = elapsed + np.cumsum(gaps)
        elapsed = float(offsets[-1])
        chunks.append(offsets)

    offsets = np.concatenate(chunks) if chunks else np.empty(0)
    offsets_us = np.floor(offsets * 10**6).astype(np.int64)

    return offsets_us[offsets_us < duration_us]


def _hft(spec: WorkloadSpec) -> Tuple[np.ndarray, np.ndarray]:
    rng = _rng(spec)
    chunk = max(16, int(spec.rate * spec.duration * 1.2))

    def draw_gaps():
        gaps = rng.exponential(1 / spec.rate, chunk)
        bursty = rng.random(chunk) < BURST_SHARE
        return gaps * np.where(bursty, BURST_FACTOR, CALM_FACTOR)

    offsets = _arrival_offsets(rng, draw_gaps, spec.duration_us)
    log_returns = rng.normal(0.0, 1e-4, offsets.size)
    prices = 100.0 * np.exp(np.cumsum(log_returns))

    return offsets, prices


def _cdr(spec: WorkloadSpec) -> Tuple[np.ndarray, np.ndarray]:
    rng = _rng(spec)
    multipliers = np.asarray(CDR_HOURLY_MULTIPLIERS)
    peak = multipliers.max()
    chunk = max(16, int(spec.rate * peak * spec.duration * 1.2))

    # Thinning of a peak rate Poisson process by the hourly multiplier.
    candidates = _arrival_offsets(
        rng,
        lambda: rng.exponential(1 / (spec.rate * peak), chunk),
        spec.duration_us,
    )
    instants = spec.start64 + candidates.astype("timedelta64[us]")
    hours = (
        instants.astype("datetime64[h]") - instants.astype("datetime64[D]")
    ).astype(np.int64)
    keep = rng.random(candidates.size) < multipliers[hours] / peak

    offsets = candidates[keep]
    durations = rng.exponential(MEAN_CALL_SECONDS, offsets.size)

    return offsets, durations


def _iot(spec: WorkloadSpec) -> Tuple[np.ndarray, np.ndarray]:
    rng = _rng(spec)
    cadence_us = int(round(spec.cadence * 10**6))

    if cadence_us < 1:
        raise InvalidSpecError(f"Cadence below 1 µs: {spec.cadence}")

    reports = -(-spec.duration_us // cadence_us)
    ticks = np.arange(reports, dtype=np.int64) * cadence_us

    # Time major layout: all devices at tick 0, then at tick 1, ...
    offsets = np.repeat(ticks, spec.devices)

    baseline = 20.0 + 5.0 * rng.standard_normal(spec.devices)
    steps = rng.normal(0.0, 0.1, (reports, spec.devices))
    readings = baseline + np.cumsum(steps, axis=0)

    return offsets, readings.ravel()


_GENERATORS = {"hft": _hft, "cdr": _cdr, "iot": _iot}


def generate_arrays(spec: WorkloadSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Generate a workload as numpy columns.

    Parameters
    ----------
    spec : WorkloadSpec
        Workload description.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        Non decreasing uint64 timestamps in spec.fmt and float64 values.

    Raises
    ------
    InvalidSpecError
        The workload runs past the year 9999.
    """
    offsets, values = _GENERATORS[spec.kind](spec)
    instants = spec.start64 + offsets.astype("timedelta64[us]")

    try:
        ts = encode_datetime64(instants, spec.fmt)
    except InvalidDateTimeError as error:
        raise InvalidSpecError(str(error))

    return ts, np.asarray(values, dtype=np.float64)


def generate(spec: WorkloadSpec) -> Iterator[Record]:
    """Generate a workload as a record stream.

    Parameters
    ----------
    spec : WorkloadSpec
        Workload description.

    Yields
    ------
    Record
        (ts, value) records in non decreasing ts order.
    """
    ts, values = generate_arrays(spec)

    for t, v in zip(ts.tolist(), values.tolist()):
        yield Record(t, v)

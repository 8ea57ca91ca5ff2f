"""Benchmark module.

Runs the integer arm (itsk Table) and the text baseline arm (in memory list
of ISO-8601 records) on identical generated data and reports medians of
measured repetitions. Every number in a report is measured in the same run.

Operations:

- insert: ingest every record with a given batch size.
- range_query: inclusive range holding about RANGE_SELECTIVITY of the rows.
- daily_aggregation: count, sum, min, max and mean per day over all rows.

Report columns (BENCH_COLUMNS, in this order):

scenario, operation, arm, batch_size, records, repeats, wall_time_s,
throughput_rps, latency_ms, bytes_stored, throughput_vs_smallest_batch,
throughput_delta_pct, bytes_delta_pct, time_ratio

The last three compare the integer arm to the baseline arm of the same
scenario, operation and batch size; they are empty on baseline rows.
"""

import logging
import time
from typing import Callable, Iterable, List, Tuple

import numpy as np

import pandas as pd

from itsk.codec import CivilDateTime, TimestampFormat, month_label
from itsk.constants import BENCH_REPEATS, BENCH_WARMUP, DEFAULT_BATCH_SIZE
from itsk.errors import InvalidSpecError
from itsk.ingest import Record, ingest_stream
from itsk.store import Table
from itsk.workloads import (
    KINDS,
    BaselineRecord,
    WorkloadSpec,
    baseline_range_scan,
    baseline_texts,
    generate_arrays,
)


logger = logging.getLogger(__name__)

ARMS = ("integer", "baseline")
OPERATIONS = ("insert", "range_query", "daily_aggregation")

RANGE_SELECTIVITY = 0.03

BENCH_COLUMNS = [
    "scenario",
    "operation",
    "arm",
    "batch_size",
    "records",
    "repeats",
    "wall_time_s",
    "throughput_rps",
    "latency_ms",
    "bytes_stored",
    "throughput_vs_smallest_batch",
    "throughput_delta_pct",
    "bytes_delta_pct",
    "time_ratio",
]

# Events per second of each scenario's generator.
SCENARIO_RATES = {"hft": 1000.0, "cdr": 50.0, "iot": 10.0}
IOT_DEVICES = 10

_START = CivilDateTime.of(2023, 1, 1)


# =============================================================================
# Data
# =============================================================================
def scenario_arrays(
    scenario: str, records: int, seed: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """First records rows of a scenario's workload.

    Parameters
    ----------
    scenario : str
        'hft', 'cdr' or 'iot'.
    records : int
        Rows wanted, at least 1.
    seed : int, optional
        Generator seed, by default 0.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        Ts64Sec timestamps and values.

    Raises
    ------
    InvalidSpecError
        Unknown scenario or records < 1.
    """
    if scenario not in KINDS:
        raise InvalidSpecError(
            f"Scenario: {scenario!r} not valid, use: {', '.join(KINDS)}"
        )
    if records < 1:
        raise InvalidSpecError(f"Records must be >= 1: {records}")

    rate = SCENARIO_RATES[scenario]
    duration = 1.5 * records / rate

    while True:
        spec = WorkloadSpec(
            scenario,
            _START,
            duration,
            rate=rate,
            seed=seed,
            devices=IOT_DEVICES,
        )
        ts, values = generate_arrays(spec)
        if ts.size >= records:
            return ts[:records], values[:records]
        duration *= 2


# =============================================================================
# Measurement
# =============================================================================
def measure(
    run: Callable, setup: Callable = None, warmup: int = 0, repeats: int = 1
) -> Tuple[List[float], object]:
    """Time repeated runs.

    Parameters
    ----------
    run : Callable
        Timed function, receives setup()'s result if setup is given.
    setup : Callable, optional
        Untimed preparation called before each run, by default None.
    warmup : int, optional
        Discarded runs, by default 0.
    repeats : int, optional
        Measured runs, by default 1.

    Returns
    -------
    Tuple[List[float], object]
        Seconds of each measured run and the value the last one returned.
    """
    times, result = [], None

    for i in range(warmup + repeats):
        arg = setup() if setup is not None else None

        start = time.perf_counter()
        result = run(arg) if setup is not None else run()
        elapsed = time.perf_counter() - start

        if i >= warmup:
            times.append(elapsed)

    return times, result


def _baseline_insert(
    ts: np.ndarray, values: np.ndarray, batch_size: int
) -> Tuple[list, List[float]]:
    store, latencies = [], []

    for start in range(0, ts.size, batch_size):
        t0 = time.perf_counter()
        texts = baseline_texts(ts[start : start + batch_size])
        store.extend(
            BaselineRecord(text, value)
            for text, value in zip(
                texts.tolist(), values[start : start + batch_size].tolist()
            )
        )
        latencies.append(time.perf_counter() - t0)

    return store, latencies


def _baseline_bytes(store: Iterable[BaselineRecord]) -> int:
    return sum(len(r.ts_text.encode("utf-8")) + 8 for r in store)


def _table_bytes(table: Table) -> int:
    report = table.stats()
    return report.ts_bytes + report.value_bytes


def _row(scenario, operation, arm, batch_size, records, times, **extra):
    wall = float(np.median(times))
    row = {
        "scenario": scenario,
        "operation": operation,
        "arm": arm,
        "batch_size": batch_size,
        "records": records,
        "repeats": len(times),
        "wall_time_s": wall,
        "throughput_rps": records / wall if wall > 0 else float("nan"),
        "latency_ms": float("nan"),
        "bytes_stored": float("nan"),
    }
    row.update(extra)
    return row


# =============================================================================
# Arms
# =============================================================================
def _insert_rows(scenario, ts, values, batch_sizes, arms, warmup, repeats):
    rows = []
    records = [Record(t, v) for t, v in zip(ts.tolist(), values.tolist())]

    for batch_size in batch_sizes:
        if "integer" in arms:
            logger.info(
                "%s insert, integer arm, batch %d", scenario, batch_size
            )
            times, result = measure(
                lambda table: (
                    table,
                    ingest_stream(records, batch_size, True, table),
                ),
                setup=lambda: Table(TimestampFormat.TS64SEC),
                warmup=warmup,
                repeats=repeats,
            )
            table, report = result
            rows.append(
                _row(
                    scenario,
                    "insert",
                    "integer",
                    batch_size,
                    ts.size,
                    times,
                    latency_ms=1000 * float(np.median(report.batch_latencies)),
                    bytes_stored=_table_bytes(table),
                )
            )

        if "baseline" in arms:
            logger.info(
                "%s insert, baseline arm, batch %d", scenario, batch_size
            )
            times, result = measure(
                lambda: _baseline_insert(ts, values, batch_size),
                warmup=warmup,
                repeats=repeats,
            )
            store, latencies = result
            rows.append(
                _row(
                    scenario,
                    "insert",
                    "baseline",
                    batch_size,
                    ts.size,
                    times,
                    latency_ms=1000 * float(np.median(latencies)),
                    bytes_stored=_baseline_bytes(store),
                )
            )

    return rows


def _read_rows(scenario, ts, values, arms, warmup, repeats):
    rows = []
    batch_size = DEFAULT_BATCH_SIZE

    width = max(1, int(ts.size * RANGE_SELECTIVITY))
    first = (ts.size - width) // 2
    lo, hi = int(ts[first]), int(ts[first + width - 1])
    selected = int(np.count_nonzero((ts >= lo) & (ts <= hi)))

    if "integer" in arms:
        table = Table(TimestampFormat.TS64SEC)
        ingest_stream(
            (Record(t, v) for t, v in zip(ts.tolist(), values.tolist())),
            batch_size,
            True,
            table,
        )
        stored = _table_bytes(table)

        logger.info("%s range query, integer arm", scenario)
        times, _ = measure(
            lambda: table.range_arrays(lo, hi), warmup=warmup, repeats=repeats
        )
        rows.append(
            _row(
                scenario,
                "range_query",
                "integer",
                batch_size,
                selected,
                times,
                bytes_stored=stored,
            )
        )

        logger.info("%s daily aggregation, integer arm", scenario)
        first_ts, last_ts = int(ts.min()), int(ts.max())
        times, _ = measure(
            lambda: table.aggregate_bins(first_ts, last_ts, "day"),
            warmup=warmup,
            repeats=repeats,
        )
        rows.append(
            _row(
                scenario,
                "daily_aggregation",
                "integer",
                batch_size,
                ts.size,
                times,
                bytes_stored=stored,
            )
        )

    if "baseline" in arms:
        store, _ = _baseline_insert(ts, values, batch_size)
        stored = _baseline_bytes(store)
        lo_text, hi_text = baseline_texts(np.array([lo, hi], np.uint64))

        logger.info("%s range query, baseline arm", scenario)
        times, _ = measure(
            lambda: baseline_range_scan(store, lo_text, hi_text),
            warmup=warmup,
            repeats=repeats,
        )
        rows.append(
            _row(
                scenario,
                "range_query",
                "baseline",
                batch_size,
                selected,
                times,
                bytes_stored=stored,
            )
        )

        def text_daily_aggregation():
            frame = pd.DataFrame(store, columns=["ts_text", "value"])
            day = frame["ts_text"].str.slice(0, 10)
            return frame.groupby(day)["value"].agg(
                ["count", "sum", "min", "max", "mean"]
            )

        logger.info("%s daily aggregation, baseline arm", scenario)
        times, _ = measure(
            text_daily_aggregation, warmup=warmup, repeats=repeats
        )
        rows.append(
            _row(
                scenario,
                "daily_aggregation",
                "baseline",
                batch_size,
                ts.size,
                times,
                bytes_stored=stored,
            )
        )

    return rows


def _add_deltas(frame: pd.DataFrame) -> pd.DataFrame:
    frame = frame.copy()

    smallest = frame.groupby(["scenario", "operation", "arm"])[
        "batch_size"
    ].transform("min")
    base_tp = frame.loc[frame["batch_size"] == smallest].set_index(
        ["scenario", "operation", "arm"]
    )["throughput_rps"]
    keys = pd.MultiIndex.from_frame(frame[["scenario", "operation", "arm"]])
    frame["throughput_vs_smallest_batch"] = (
        frame["throughput_rps"].to_numpy() / base_tp.reindex(keys).to_numpy()
    )

    key = ["scenario", "operation", "batch_size"]
    baseline = frame.loc[frame["arm"] == "baseline"].set_index(key)
    integer = frame["arm"] == "integer"
    keys = pd.MultiIndex.from_frame(frame.loc[integer, key])

    def ratio(column):
        ref = baseline[column].reindex(keys).to_numpy(dtype=float)
        return frame.loc[integer, column].to_numpy(dtype=float) / ref

    frame["throughput_delta_pct"] = np.nan
    frame["bytes_delta_pct"] = np.nan
    frame["time_ratio"] = np.nan
    if not baseline.empty:
        frame.loc[integer, "throughput_delta_pct"] = (
            ratio("throughput_rps") - 1
        ) * 100
        frame.loc[integer, "bytes_delta_pct"] = (
            ratio("bytes_stored") - 1
        ) * 100
        frame.loc[integer, "time_ratio"] = ratio("wall_time_s")

    return frame


def run_bench(
    scenarios: Iterable[str] = ("iot",),
    records: int = 10**5,
    batch_sizes: Iterable[int] = (1, 100, 1000, 10000),
    arms: Iterable[str] = ARMS,
    operations: Iterable[str] = OPERATIONS,
    seed: int = 0,
    warmup: int = BENCH_WARMUP,
    repeats: int = BENCH_REPEATS,
) -> pd.DataFrame:
    """Run the benchmark grid.

    Parameters
    ----------
    scenarios : Iterable[str], optional
        Workloads among 'hft', 'cdr' and 'iot', by default ('iot',).
    records : int, optional
        Rows per scenario, by default 10**5.
    batch_sizes : Iterable[int], optional
        Insert batch sizes, by default (1, 100, 1000, 10000).
    arms : Iterable[str], optional
        'integer' and/or 'baseline', by default both.
    operations : Iterable[str], optional
        Operations to run, by default all of OPERATIONS.
    seed : int, optional
        Workload seed, by default 0.
    warmup : int, optional
        Discarded runs per measurement, by default BENCH_WARMUP.
    repeats : int, optional
        Measured runs per measurement (median reported), by default
        BENCH_REPEATS.

    Returns
    -------
    pandas.DataFrame
        One row per scenario, operation, arm and batch size, with the
        BENCH_COLUMNS columns.

    Raises
    ------
    InvalidSpecError
        Unknown scenario, arm or operation, or non positive sizes.
    """
    arms, operations = tuple(arms), tuple(operations)
    batch_sizes = tuple(dict.fromkeys(batch_sizes))

    for arm in arms:
        if arm not in ARMS:
            raise InvalidSpecError(
                f"Arm: {arm!r} not valid, use: {', '.join(ARMS)}"
            )
    for operation in operations:
        if operation not in OPERATIONS:
            raise InvalidSpecError(
                f"Operation: {operation!r} not valid, use: "
                f"{', '.join(OPERATIONS)}"
            )
    if not batch_sizes or min(batch_sizes) < 1:
        raise InvalidSpecError(f"Batch sizes must be >= 1: {batch_sizes}")
    if repeats < 1 or warmup < 0:
        raise InvalidSpecError("Need repeats >= 1 and warmup >= 0")

    rows = []
    for scenario in scenarios:
        ts, values = scenario_arrays(scenario, records, seed)

        if "insert" in operations:
            rows += _insert_rows(
                scenario, ts, values, batch_sizes, arms, warmup, repeats
            )
        if {"range_query", "daily_aggregation"} & set(operations):
            rows += [
                row
                for row in _read_rows(
                    scenario, ts, values, arms, warmup, repeats
                )
                if row["operation"] in operations
            ]

    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS[:10])
    return _add_deltas(frame)[BENCH_COLUMNS]


def storage_summary(scenarios: Iterable[str] = KINDS, records: int = 10**4):
    """Timestamp column bytes of both arms for each scenario.

    Parameters
    ----------
    scenarios : Iterable[str], optional
        Workloads, by default all.
    records : int, optional
        Rows per scenario, by default 10**4.

    Returns
    -------
    pandas.DataFrame
        Columns scenario, records, integer_ts_bytes, baseline_ts_bytes,
        reduction_pct and first_month (YYYYMM of the first row).
    """
    rows = []
    for scenario in scenarios:
        ts, values = scenario_arrays(scenario, records)
        table = Table(TimestampFormat.TS64SEC)
        table.write_batch(ts, values)

        integer = table.stats().ts_bytes
        baseline = int(sum(len(t) for t in baseline_texts(ts).tolist()))
        rows.append(
            {
                "scenario": scenario,
                "records": int(ts.size),
                "integer_ts_bytes": integer,
                "baseline_ts_bytes": baseline,
                "reduction_pct": 100 * (1 - integer / baseline),
                "first_month": month_label(int(ts[0]) // 10**6),
            }
        )

    return pd.DataFrame(rows)

import math

import numpy as np

import pandas as pd

import pytest

from itsk import bench
from itsk.codec import (
    CivilDateTime,
    decode,
    decode_to_datetime64,
    encode,
    encode_datetime64,
    pack_ts64,
    packed_fraction,
    unpack_ts64,
)
from itsk.compression import (
    compress_column,
    compression_ratio,
    decompress_column,
)
from itsk.store import Table
from itsk.timescale import BUILTIN_LEAP_TABLE, tai_to_utc, utc_to_tai
from itsk.workloads import WorkloadSpec, generate_arrays


def random_instants(n, seed, lo="0001-01-01", hi="9999-12-31T23:59:59"):
    rng = np.random.default_rng(seed)
    start = np.datetime64(lo, "us")
    span = int((np.datetime64(hi, "us") - start).astype(np.int64))
    # 10 µs resolution.
    offsets = rng.integers(0, span // 10, n) * 10
    return start + offsets.astype("timedelta64[us]")


# =============================================================================
# Codec round trips
# =============================================================================
@pytest.mark.acceptance
@pytest.mark.parametrize(
    "fmt, unit", [("ts32", "D"), ("ts64sec", "s"), ("ts64frac", "us")]
)
def test_codec_round_trip(fmt, unit):
    instants = random_instants(10**5, seed=1).astype(f"datetime64[{unit}]")

    ts = encode_datetime64(instants, fmt)

    assert np.array_equal(
        decode_to_datetime64(ts, fmt).astype(f"datetime64[{unit}]"), instants
    )

    # Scalar codec agrees with the vectorized one.
    for t in ts[:10**4].tolist():
        assert encode(decode(t, fmt), fmt) == t

    # Integer order is instant order.
    assert np.array_equal(
        np.argsort(ts, kind="stable"), np.argsort(instants, kind="stable")
    )


@pytest.mark.acceptance
def test_packed_round_trip():
    instants = random_instants(10**5, 2, "2000-01-01", "2099-12-31T23:59:59")
    ts = encode_datetime64(instants, "ts64frac").tolist()

    packed = []
    for t in ts:
        dt = decode(t, "ts64frac")
        p = pack_ts64(dt)
        back = unpack_ts64(p)

        assert back[:4] == dt[:4]
        assert abs(back.frac_1e5 - dt.frac_1e5) <= 1
        assert pack_ts64(back) == p
        assert (
            abs(packed_fraction(p) * 10**5 - dt.frac_1e5 * 65536)
            <= 10**5 // 2
        )
        packed.append(p)

    assert np.array_equal(
        np.argsort(np.array(ts, np.uint64), kind="stable"),
        np.argsort(np.array(packed, np.uint64), kind="stable"),
    )


# =============================================================================
# Storage engine
# =============================================================================
@pytest.fixture(scope="module")
def hft_table():
    spec = WorkloadSpec(
        "hft", CivilDateTime.of(2023, 3, 1), 3 * 86400, rate=0.04, seed=12
    )
    ts, values = generate_arrays(spec)
    table = Table("ts64sec")
    for start in range(0, ts.size, 997):
        table.write_batch(ts[start : start + 997], values[start : start + 997])
    return table, ts, values


@pytest.mark.acceptance
def test_random_ranges_against_oracle(hft_table):
    table, ts, values = hft_table
    rng = np.random.default_rng(3)

    assert ts.size > 9000

    for _ in range(200):
        a, b = np.sort(rng.choice(ts, 2))
        lo, hi = int(a) - int(rng.integers(0, 2)), int(b)

        found_ts, found_values = table.range_arrays(lo, hi)

        mask = (ts >= lo) & (ts <= hi)
        assert np.array_equal(found_ts, ts[mask])
        assert np.array_equal(found_values, values[mask])


@pytest.mark.acceptance
@pytest.mark.parametrize(
    "unit, place", [("minute", 10**2), ("hour", 10**4), ("day", 10**6)]
)
def test_bins_against_group_by(hft_table, unit, place):
    table, ts, values = hft_table
    rng = np.random.default_rng(4)

    for _ in range(10):
        a, b = np.sort(rng.choice(ts, 2))
        lo, hi = int(a), int(b)

        bins = table.aggregate_bins(lo, hi, unit)

        mask = (ts >= lo) & (ts <= hi)
        frame = pd.DataFrame(
            {"bin": (ts[mask] // place) * place, "value": values[mask]}
        )
        oracle = frame.groupby("bin")["value"].agg(
            ["count", "sum", "min", "max"]
        )
        assert [b.bin_label for b in bins] == oracle.index.tolist()
        assert [b.count for b in bins] == oracle["count"].tolist()
        assert np.allclose([b.sum for b in bins], oracle["sum"])
        assert [b.min for b in bins] == oracle["min"].tolist()
        assert [b.max for b in bins] == oracle["max"].tolist()


@pytest.mark.acceptance
def test_one_day_query_touches_one_partition():
    spec = WorkloadSpec(
        "iot", CivilDateTime.of(2023, 1, 1), 30 * 86400, cadence=60
    )
    ts, values = generate_arrays(spec)
    table = Table("ts64sec")
    table.write_batch(ts, values)

    assert len(table.partitions) == 30
    assert all(len(p.segments) == 1 for p in table.partitions.values())

    table.reset_counters()
    found, _ = table.range_arrays(20230115000000, 20230115235959)

    rows = table.partitions[20230115].row_count
    assert found.size == rows == 1440
    assert table.counters.partitions_opened == 1
    assert table.counters.blocks_decompressed <= math.ceil(rows / 128) + 2


# =============================================================================
# Compression
# =============================================================================
@pytest.mark.acceptance
@pytest.mark.parametrize("kind", ["hft", "cdr", "iot"])
def test_workloads_compress_losslessly(kind):
    spec = WorkloadSpec(
        kind, CivilDateTime.of(2023, 1, 1), 86400, rate=0.5, devices=5,
        fmt="ts64frac",
    )
    ts, _ = generate_arrays(spec)

    column = compress_column(ts)

    assert np.array_equal(decompress_column(column), ts)
    assert compression_ratio(column) > 1


@pytest.mark.acceptance
def test_storage_reduction_every_scenario():
    summary = bench.storage_summary()

    assert summary["scenario"].tolist() == ["hft", "cdr", "iot"]
    assert (summary["records"] == 10**4).all()
    assert (
        summary["integer_ts_bytes"] <= 0.7 * summary["baseline_ts_bytes"]
    ).all()
    assert (summary["baseline_ts_bytes"] == 19 * 10**4).all()
    assert (summary["first_month"] == 202301).all()


# =============================================================================
# Timescale
# =============================================================================
@pytest.mark.acceptance
def test_tai_round_trips():
    assert utc_to_tai(2024010100000000000) == 2024010100003700000

    instants = random_instants(
        10**5, 5, "1972-01-01", "2035-12-31T23:59:59"
    )
    for t in encode_datetime64(instants, "ts64frac").tolist():
        assert tai_to_utc(utc_to_tai(t)) == t


@pytest.mark.acceptance
def test_every_leap_second():
    assert len(BUILTIN_LEAP_TABLE) == 28
    assert BUILTIN_LEAP_TABLE.entries[0] == (19720101, 10)
    assert BUILTIN_LEAP_TABLE.entries[-1] == (20170101, 37)

    for (day, _), tai_start in list(
        zip(BUILTIN_LEAP_TABLE.entries, BUILTIN_LEAP_TABLE.tai_starts)
    )[1:]:
        assert BUILTIN_LEAP_TABLE.step_at(day) == 1

        midnight = np.datetime64(
            f"{day // 10**4:04d}-{day // 100 % 100:02d}-{day % 100:02d}", "s"
        )
        before = int(
            encode_datetime64(midnight - np.timedelta64(1, "s"), "ts64frac")
        )
        inserted = before + 10**5

        assert utc_to_tai(inserted) == utc_to_tai(before) + 10**5
        assert tai_to_utc(utc_to_tai(inserted)) == inserted
        assert utc_to_tai(day * 10**11) == tai_start
        assert utc_to_tai(inserted) == tai_start - 10**5


# =============================================================================
# Determinism and report schema
# =============================================================================
@pytest.mark.acceptance
def test_generation_is_reproducible():
    spec = WorkloadSpec(
        "cdr", CivilDateTime.of(2023, 1, 1), 86400, rate=0.2, seed=99
    )

    first = generate_arrays(spec)
    second = generate_arrays(spec)

    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])


@pytest.mark.acceptance
def test_bench_report_schema():
    frame = bench.run_bench(
        scenarios=["hft", "iot"],
        records=300,
        batch_sizes=[30, 300],
        warmup=0,
        repeats=1,
    )

    assert list(frame.columns) == bench.BENCH_COLUMNS
    assert len(frame) == 2 * (2 * 2 + 4)
    assert (frame["records"] > 0).all()
    assert (frame["wall_time_s"] > 0).all()
    insert = frame[frame["operation"] == "insert"]
    smallest = insert[insert["batch_size"] == 30]
    assert (smallest["throughput_vs_smallest_batch"] == 1).all()

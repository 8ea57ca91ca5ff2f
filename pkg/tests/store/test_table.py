import os
import threading
from fractions import Fraction

import numpy as np

import pytest

from itsk.codec import TimestampFormat, encode_datetime64
from itsk.compression import compress_column, compression_ratio
from itsk.errors import (
    CorruptSegmentError,
    FormatMismatchError,
    InvalidDateError,
    InvalidRangeError,
    StoreWriteError,
    UnsortedBatchError,
)
from itsk.store import BinAggregate, Table


def two_days():
    ts = np.array(
        [
            20230101235958,
            20230101235959,
            20230102000000,
            20230102000001,
            20230102120000,
        ],
        np.uint64,
    )
    return ts, np.arange(5, dtype=np.float64)


# =============================================================================
# Writes
# =============================================================================
@pytest.mark.store
def test_write_batch_splits_days():
    table = Table("ts64sec")
    ts, values = two_days()

    ids = table.write_batch(ts, values)

    assert ids == ["20230101/000000", "20230102/000000"]
    assert sorted(table.partitions) == [20230101, 20230102]
    assert table.partitions[20230101].row_count == 2
    assert table.partitions[20230102].row_count == 3
    assert table.row_count == 5

    assert table.write_batch(ts[2:], values[2:]) == ["20230102/000001"]
    assert len(table.partitions[20230102].segments) == 2


@pytest.mark.store
def test_partition_keys_hold_their_rows():
    table = Table("ts64frac")
    ts = np.array(
        [2023010123595999999, 2023010200000000000, 2023010300000000001],
        np.uint64,
    )
    table.write_batch(ts, [1.0, 2.0, 3.0])

    for key, partition in table.partitions.items():
        for segment in partition.segments:
            assert (segment.timestamps() // 10**11 == key).all()


@pytest.mark.store
def test_write_batch_one_hour_single_segment():
    table = Table("ts64sec")
    ts = 20230101120000 + np.arange(60, dtype=np.uint64) * 100

    assert table.write_batch(ts, np.ones(60)) == ["20230101/000000"]

    table.partitions[20230101].segments[0].check()


@pytest.mark.store
def test_write_batch_rejects():
    table = Table("ts64sec")

    with pytest.raises(UnsortedBatchError):
        table.write_batch([20230102000000, 20230101000000], [1.0, 2.0])

    with pytest.raises(FormatMismatchError):
        table.write_batch([20231301000000], [1.0])

    with pytest.raises(FormatMismatchError):
        table.write_batch([2023010100000000000], [1.0])

    with pytest.raises(FormatMismatchError):
        table.write_batch([-1], [1.0])

    with pytest.raises(ValueError):
        table.write_batch([20230101000000], [1.0, 2.0])

    assert table.write_batch([], []) == []
    assert table.row_count == 0


@pytest.mark.store
def test_ts32_tables_are_refused():
    with pytest.raises(FormatMismatchError):
        Table(TimestampFormat.TS32)


# =============================================================================
# Reads
# =============================================================================
@pytest.fixture
def month_table():
    rng = np.random.default_rng(2)
    instants = np.sort(
        np.datetime64("2022-12-25T00:00:00", "s")
        + rng.integers(0, 45 * 86400, 5000).astype("timedelta64[s]")
    )
    ts = encode_datetime64(instants, "ts64sec")
    values = rng.normal(size=ts.size)

    table = Table("ts64sec")
    for start in range(0, ts.size, 700):
        table.write_batch(ts[start : start + 700], values[start : start + 700])

    return table, ts, values


@pytest.mark.store
def test_range_query_january(month_table):
    table, ts, values = month_table

    rows = table.range_query(20230101000000, 20230131235959)

    mask = (ts >= 20230101000000) & (ts <= 20230131235959)
    assert rows == list(zip(ts[mask].tolist(), values[mask].tolist()))
    assert all(20230101 <= t // 10**6 <= 20230131 for t, _ in rows)


@pytest.mark.store
def test_range_query_point(month_table):
    table, ts, values = month_table
    t = int(ts[1234])

    rows = table.range_query(t, t)

    expected = [(t, v) for s, v in zip(ts.tolist(), values.tolist()) if s == t]
    assert rows == expected


@pytest.mark.store
@pytest.mark.parametrize(
    "lo, hi",
    [(20230102000000, 20230101000000), (-1, 5), (1.5, 20), (0, 1 << 64)],
)
def test_range_query_invalid(month_table, lo, hi):
    table, _, _ = month_table

    with pytest.raises(InvalidRangeError):
        table.range_query(lo, hi)


@pytest.mark.store
def test_range_query_outside_data(month_table):
    table, _, _ = month_table

    assert table.range_query(20240101000000, 20240201000000) == []
    assert table.counters.partitions_opened == 0


@pytest.mark.store
def test_aggregate_bins_hour():
    table = Table("ts64sec")
    table.write_batch(
        [20230101120001, 20230101123000, 20230101130000], [2.0, 4.0, 9.0]
    )

    bins = table.aggregate_bins(20230101000000, 20230101235959, "hour")

    assert bins == [
        BinAggregate(20230101120000, 2, 6.0, 2.0, 4.0, 3.0),
        BinAggregate(20230101130000, 1, 9.0, 9.0, 9.0, 9.0),
    ]


@pytest.mark.store
def test_aggregate_bins_edge_cases():
    table = Table("ts64sec")
    table.write_batch([20230101120001], [7.5])

    single = table.aggregate_bins(20230101000000, 20230101235959, "day")
    assert single == [BinAggregate(20230101000000, 1, 7.5, 7.5, 7.5, 7.5)]

    assert table.aggregate_bins(20230102000000, 20230103000000, "day") == []

    with pytest.raises(ValueError):
        table.aggregate_bins(20230101000000, 20230101235959, "week")

    with pytest.raises(InvalidRangeError):
        table.aggregate_bins(20230102000000, 20230101000000, "hour")


@pytest.mark.store
def test_aggregate_bins_month_oracle(month_table):
    table, ts, values = month_table

    bins = table.aggregate_bins(0, (1 << 64) - 1, "month")

    labels = (ts // 10**8) * 10**8
    expected = {}
    for label, value in zip(labels.tolist(), values.tolist()):
        expected.setdefault(label, []).append(value)

    assert [b.bin_label for b in bins] == sorted(expected)
    for b in bins:
        group = expected[b.bin_label]
        assert b.count == len(group)
        assert b.sum == pytest.approx(sum(group), rel=1e-9, abs=1e-9)
        assert b.min == min(group)
        assert b.max == max(group)


# =============================================================================
# Drop and stats
# =============================================================================
@pytest.mark.store
def test_drop_partitions_before():
    table = Table("ts64sec")
    table.write_batch([20221231120000, 20230101120000], [1.0, 2.0])

    assert table.drop_partitions_before(20230101) == 1
    assert sorted(table.partitions) == [20230101]
    assert table.range_query(0, (1 << 64) - 1) == [(20230101120000, 2.0)]

    assert table.drop_partitions_before(20220101) == 0
    assert table.drop_partitions_before(20240101) == 1
    assert table.partitions == {}

    with pytest.raises(InvalidDateError):
        table.drop_partitions_before(20231301)


@pytest.mark.store
def test_stats():
    empty = Table("ts64sec").stats()

    assert empty.rows == empty.ts_bytes == empty.value_bytes == 0
    assert empty.ratio == 0
    assert empty.to_frame()["rows"].tolist() == [0]

    seconds = np.arange(86400)
    hour, rest = np.divmod(seconds, 3600)
    minute, second = np.divmod(rest, 60)
    ts = (20230101000000 + hour * 10**4 + minute * 100 + second).astype(
        np.uint64
    )
    table = Table("ts64sec")
    table.write_batch(ts, np.zeros(ts.size))

    report = table.stats()
    column = compress_column(ts)

    assert report.rows == 86400
    assert report.ts_bytes == column.nbytes
    assert report.value_bytes == 86400 * 8
    assert report.ratio == compression_ratio(column)
    assert isinstance(report.ratio, Fraction)

    frame = report.to_frame()
    assert frame["partition"].tolist() == ["20230101", "total"]
    assert frame.loc[1, "rows"] == 86400


# =============================================================================
# Persistence
# =============================================================================
@pytest.mark.store
def test_persisted_table(tmp_path):
    path = tmp_path / "table"
    table = Table("ts64sec", path)
    ts, values = two_days()
    table.write_batch(ts, values)

    assert (path / "table.json").is_file()
    assert (path / "20230101" / "000000.seg").is_file()
    assert (path / "20230102" / "000000.seg").is_file()

    again = Table.open(path)
    assert again.fmt is TimestampFormat.TS64SEC
    assert again.range_query(0, (1 << 64) - 1) == table.range_query(
        0, (1 << 64) - 1
    )

    assert again.write_batch(ts[4:], values[4:]) == ["20230102/000001"]

    again.drop_partitions_before(20230102)
    assert not (path / "20230101").exists()
    assert sorted(Table.open(path).partitions) == [20230102]


@pytest.mark.store
def test_failed_write_publishes_nothing(tmp_path):
    table = Table("ts64sec", tmp_path)
    table.write_batch([20230101120000], [1.0])
    blocker = tmp_path / "20230102"
    blocker.write_bytes(b"")

    with pytest.raises(StoreWriteError):
        table.write_batch([20230101130000, 20230102130000], [2.0, 3.0])

    assert table.row_count == 1
    assert len(table.partitions[20230101].segments) == 1
    assert sorted(p.name for p in (tmp_path / "20230101").iterdir()) == [
        "000000.seg"
    ]
    assert Table.open(tmp_path).row_count == 1

    blocker.unlink()
    assert table.write_batch(
        [20230101130000, 20230102130000], [2.0, 3.0]
    ) == ["20230101/000001", "20230102/000000"]
    assert table.row_count == 3
    assert Table.open(tmp_path).row_count == 3


@pytest.mark.store
def test_failed_drop_keeps_every_partition(tmp_path, monkeypatch):
    table = Table("ts64sec", tmp_path)
    table.write_batch(
        [20230101000000, 20230102000000, 20230103000000], [1.0, 2.0, 3.0]
    )

    rename = os.rename
    calls = []

    def flaky_rename(src, dst):
        calls.append(src)
        if len(calls) == 2:
            raise PermissionError("busy")
        rename(src, dst)

    monkeypatch.setattr(os, "rename", flaky_rename)

    with pytest.raises(StoreWriteError):
        table.drop_partitions_before(20230103)

    monkeypatch.setattr(os, "rename", rename)

    assert sorted(table.partitions) == [20230101, 20230102, 20230103]
    assert (tmp_path / "20230101" / "000000.seg").is_file()
    assert (tmp_path / "20230102" / "000000.seg").is_file()
    assert Table.open(tmp_path).row_count == 3

    assert table.drop_partitions_before(20230103) == 2
    assert sorted(Table.open(tmp_path).partitions) == [20230103]
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "20230103",
        "table.json",
    ]


@pytest.mark.store
def test_persisted_format_mismatch(tmp_path):
    Table("ts64sec", tmp_path)

    with pytest.raises(FormatMismatchError):
        Table("ts64frac", tmp_path)


@pytest.mark.store
def test_open_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        Table.open(tmp_path / "missing")

    table = Table("ts64sec", tmp_path)
    table.write_batch([20230101000000], [1.0])
    (tmp_path / "20230101" / "000000.seg").write_bytes(b"ITSK")

    with pytest.raises(CorruptSegmentError):
        Table.open(tmp_path)


# =============================================================================
# Concurrency
# =============================================================================
@pytest.mark.store
def test_readers_see_consistent_snapshots():
    table = Table("ts64sec")
    stop = threading.Event()
    errors = []

    seconds = np.arange(100, dtype=np.uint64)
    # 00:00:00 .. 00:01:39
    offsets = (seconds // 60) * 100 + seconds % 60

    def writer():
        try:
            for day in range(1, 29):
                base = 20230200000000 + day * 10**6
                table.write_batch(base + offsets, np.full(100, float(day)))
        except Exception as error:
            errors.append(error)
        finally:
            stop.set()

    def reader():
        while not stop.is_set():
            rows = table.range_query(0, (1 << 64) - 1)
            if len(rows) % 100:
                errors.append(len(rows))
            days = {t // 10**6: v for t, v in rows}
            if any(v != day % 100 for day, v in days.items()):
                errors.append(days)

    threads = [threading.Thread(target=writer)] + [
        threading.Thread(target=reader) for _ in range(3)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join(timeout=60)

    assert not any(thread.is_alive() for thread in threads)
    assert errors == []
    assert table.row_count == 2800
    assert len(table.partitions) == 28

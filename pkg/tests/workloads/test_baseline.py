import numpy as np

import pytest

from itsk.codec import CivilDateTime, encode_datetime64
from itsk.errors import MalformedBoundError
from itsk.ingest import Record
from itsk.store import Table
from itsk.workloads import (
    BASELINE_RECORD_BYTES,
    INTEGER_RECORD_BYTES,
    BaselineRecord,
    WorkloadSpec,
    baseline_range_scan,
    baseline_texts,
    format_iso,
    from_baseline,
    generate_arrays,
    parse_iso,
    to_baseline,
)


trials = [
    (20231027133455, "2023-10-27T13:34:55"),
    (10101000000, "0001-01-01T00:00:00"),
    (99991231235959, "9999-12-31T23:59:59"),
    (20240229000000, "2024-02-29T00:00:00"),
]


@pytest.mark.workloads
@pytest.mark.parametrize("t, text", trials)
def test_format_and_parse(t, text):
    assert format_iso(t) == text
    assert parse_iso(text) == t
    assert baseline_texts(np.array([t], np.uint64)).tolist() == [text]


@pytest.mark.workloads
@pytest.mark.parametrize(
    "text",
    [
        "2023-10-27 13:34:55",
        "2023-10-27T13:34",
        "2023-10-27T13:34:55Z",
        "2023-02-30T00:00:00",
        "2023-10-27T24:00:00",
        "2023-10-27T13:34:60",
        "",
        20231027133455,
    ],
)
def test_parse_malformed(text):
    with pytest.raises(MalformedBoundError):
        parse_iso(text)


@pytest.mark.workloads
def test_record_sizes():
    assert BASELINE_RECORD_BYTES == 27
    assert INTEGER_RECORD_BYTES == 16
    assert BASELINE_RECORD_BYTES > INTEGER_RECORD_BYTES


@pytest.mark.workloads
def test_to_and_from_baseline():
    records = [Record(20230101120000, 1.5), (20230101120001, 2)]

    texts = list(to_baseline(records))

    assert texts == [
        BaselineRecord("2023-01-01T12:00:00", 1.5),
        BaselineRecord("2023-01-01T12:00:01", 2.0),
    ]
    assert list(from_baseline(texts)) == [
        Record(20230101120000, 1.5),
        Record(20230101120001, 2.0),
    ]


@pytest.mark.workloads
def test_text_order_matches_integer_order():
    rng = np.random.default_rng(8)
    instants = np.datetime64("0001-01-01", "s") + rng.integers(
        0, 315537897599, 2000
    ).astype("timedelta64[s]")

    ts = encode_datetime64(instants, "ts64sec")
    texts = baseline_texts(ts)

    assert np.array_equal(
        np.argsort(ts, kind="stable"), np.argsort(texts, kind="stable")
    )


# =============================================================================
# baseline_range_scan
# =============================================================================
@pytest.mark.workloads
def test_scan_empty_stream():
    assert (
        baseline_range_scan([], "2023-01-01T00:00:00", "2023-12-31T23:59:59")
        == []
    )


@pytest.mark.workloads
def test_scan_reversed_bounds_is_empty():
    stream = list(to_baseline([(20230601000000, 1.0)]))

    assert (
        baseline_range_scan(
            stream, "2023-12-31T23:59:59", "2023-01-01T00:00:00"
        )
        == []
    )


@pytest.mark.workloads
def test_scan_malformed_bound():
    with pytest.raises(MalformedBoundError):
        baseline_range_scan([], "2023-01-01", "2023-12-31T23:59:59")


@pytest.mark.workloads
def test_scan_matches_range_query():
    spec = WorkloadSpec(
        "hft", CivilDateTime.of(2023, 1, 1), 3 * 86400, rate=0.05, seed=4
    )
    ts, values = generate_arrays(spec)
    table = Table("ts64sec")
    table.write_batch(ts, values)
    stream = list(to_baseline(zip(ts.tolist(), values.tolist())))

    for lo, hi in [
        (20230101060000, 20230102060000),
        (20230102000000, 20230102000000),
        (20221231000000, 20230105000000),
    ]:
        expected = table.range_query(lo, hi)
        found = baseline_range_scan(stream, format_iso(lo), format_iso(hi))

        assert [(parse_iso(r.ts_text), r.value) for r in found] == expected

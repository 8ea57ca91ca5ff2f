import pytest

from itsk.errors import UnknownDialectError
from itsk.writers import DIALECTS, clickhouse_ddl, postgres_ddl, to_ddl


@pytest.mark.writers
def test_postgres_place_values():
    sql = postgres_ddl()

    assert "* 10000000000" in sql
    assert "* 100000000 +" in sql
    assert "* 1000000000 +" not in sql
    assert "CREATE INDEX idx_events_time_int ON events (time_int);" in sql
    assert "PARTITION BY RANGE (time_int)" in sql
    assert "FOR VALUES FROM (20230101000000) TO (20230102000000)" in sql


@pytest.mark.writers
def test_postgres_arguments():
    sql = postgres_ddl(table="trades", day=20240229)

    assert "CREATE TABLE trades (" in sql
    assert "trades_measurements_20240229" in sql
    assert "FROM (20240229000000) TO (20240230000000)" in sql


@pytest.mark.writers
@pytest.mark.parametrize(
    "fmt, divisor", [("ts64sec", 1000000), ("ts64frac", 100000000000)]
)
def test_clickhouse(fmt, divisor):
    sql = clickhouse_ddl(fmt=fmt)

    assert "CREATE TABLE metrics (" in sql
    assert "ENGINE = MergeTree()" in sql
    assert f"PARTITION BY intDiv(ts, {divisor})" in sql
    assert "ORDER BY (ts)" in sql


@pytest.mark.writers
def test_to_ddl():
    assert DIALECTS == ("postgres", "clickhouse")
    assert to_ddl("postgres") == postgres_ddl()
    assert to_ddl("clickhouse", table="t") == clickhouse_ddl(table="t")

    with pytest.raises(UnknownDialectError):
        to_ddl("oracle")

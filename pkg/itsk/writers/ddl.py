"""DDL writers module.

SQL templates storing integer timestamps in PostgreSQL and ClickHouse.

Supported:

- PostgreSQL: generated integer column, functional index, range
  partitioned table.
- ClickHouse: MergeTree table ordered by the integer timestamp.
"""

from itsk.codec import TimestampFormat, as_format
from itsk.errors import UnknownDialectError


DIALECTS = ("postgres", "clickhouse")


_POSTGRES = """\
-- Integer timestamps in PostgreSQL.
--
-- Place values of YYYYMMDDhhmmss: year * 10^10, month * 10^8,
-- day * 10^6, hour * 10^4, minute * 10^2, second. A month multiplier of
-- 10^9 would overlap the day digits: 2023-01-01 12:00:00 must give
-- 20230101120000.

CREATE TABLE {table} (
    id SERIAL PRIMARY KEY,
    event_time TIMESTAMP NOT NULL,
    time_int BIGINT GENERATED ALWAYS AS (
        EXTRACT(YEAR FROM event_time)::bigint * 10000000000 +
        EXTRACT(MONTH FROM event_time)::bigint * 100000000 +
        EXTRACT(DAY FROM event_time)::bigint * 1000000 +
        EXTRACT(HOUR FROM event_time)::bigint * 10000 +
        EXTRACT(MINUTE FROM event_time)::bigint * 100 +
        FLOOR(EXTRACT(SECOND FROM event_time))::bigint
    ) STORED
);

CREATE INDEX idx_{table}_time_int ON {table} (time_int);

-- Day partitions: [YYYYMMDD000000, YYYYMMDD+1 000000).
CREATE TABLE {table}_measurements (
    time_int BIGINT NOT NULL,
    value DOUBLE PRECISION
) PARTITION BY RANGE (time_int);

CREATE TABLE {table}_measurements_{day} PARTITION OF {table}_measurements
    FOR VALUES FROM ({lo}) TO ({hi});
"""

_CLICKHOUSE = """\
-- Integer timestamps in ClickHouse ({label}).
-- Day partition key: intDiv(ts, {divisor}) = YYYYMMDD.

CREATE TABLE {table} (
    ts UInt64,
    value Float64
)
ENGINE = MergeTree()
PARTITION BY intDiv(ts, {divisor})
ORDER BY (ts);
"""


def postgres_ddl(table: str = "events", day: int = 20230101) -> str:
    """PostgreSQL DDL for a Ts64Sec generated column.

    Parameters
    ----------
    table : str, optional
        Table name, by default 'events'.
    day : int, optional
        Ts32 day of the example partition, by default 20230101.

    Returns
    -------
    str
        SQL script.
    """
    lo = day * 10**6
    return _POSTGRES.format(table=table, day=day, lo=lo, hi=lo + 10**6)


def clickhouse_ddl(
    table: str = "metrics", fmt: TimestampFormat = TimestampFormat.TS64SEC
) -> str:
    """ClickHouse MergeTree DDL.

    Parameters
    ----------
    table : str, optional
        Table name, by default 'metrics'.
    fmt : str or TimestampFormat, optional
        Format of ts, by default Ts64Sec.

    Returns
    -------
    str
        SQL script.
    """
    fmt = as_format(fmt)
    return _CLICKHOUSE.format(
        table=table, label=fmt.value, divisor=fmt.day_divisor
    )


def to_ddl(dialect: str, **kwargs) -> str:
    """DDL script of a dialect.

    Parameters
    ----------
    dialect : str
        'postgres' or 'clickhouse'.
    **kwargs
        Passed to postgres_ddl or clickhouse_ddl.

    Returns
    -------
    str
        SQL script.

    Raises
    ------
    UnknownDialectError
        dialect is not supported.
    """
    if dialect == "postgres":
        return postgres_ddl(**kwargs)
    elif dialect == "clickhouse":
        return clickhouse_ddl(**kwargs)

    raise UnknownDialectError(
        f"Dialect: {dialect!r} not valid, use: {', '.join(DIALECTS)}"
    )

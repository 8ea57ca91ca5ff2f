"""Writers module.

The writers module renders itsk data for other tools and for people.

Supported:

- SQL DDL: PostgreSQL and ClickHouse integer timestamp tables.
- CSV: records (`ts,value`), text baseline (`iso_ts,value`) and reports.
"""

from .csv_files import (
    BASELINE_COLUMNS,
    RECORD_COLUMNS,
    read_records_csv,
    write_baseline_csv,
    write_records_csv,
)
from .ddl import DIALECTS, clickhouse_ddl, postgres_ddl, to_ddl
from .reports import REPORT_FORMATS, render_frame, write_bench_report


__all__ = [
    "BASELINE_COLUMNS",
    "RECORD_COLUMNS",
    "read_records_csv",
    "write_baseline_csv",
    "write_records_csv",
    "DIALECTS",
    "clickhouse_ddl",
    "postgres_ddl",
    "to_ddl",
    "REPORT_FORMATS",
    "render_frame",
    "write_bench_report",
]

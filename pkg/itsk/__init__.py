"""itsk library.

Integer timestamp codec, UTC/TAI conversion, delta bit packed timestamp
columns and a day partitioned micro storage engine.
"""

from . import codec, compression, constants, errors, timescale, writers
from .codec import TimestampFormat, decode, encode, truncate
from .compression import compress_column, decompress_column
from .ingest import BatchBuffer, Record, ingest_stream
from .store import Table
from .timescale import tai_to_utc, utc_to_tai
from .workloads import WorkloadSpec, generate


__version__ = "0.1.0"

__all__ = [
    "codec",
    "compression",
    "constants",
    "errors",
    "timescale",
    "writers",
    "TimestampFormat",
    "decode",
    "encode",
    "truncate",
    "compress_column",
    "decompress_column",
    "BatchBuffer",
    "Record",
    "ingest_stream",
    "Table",
    "tai_to_utc",
    "utc_to_tai",
    "WorkloadSpec",
    "generate",
]

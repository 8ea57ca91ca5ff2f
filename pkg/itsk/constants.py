"""constants module.

Attributes
----------
TS32_DATE_PLACES : dict
    Decimal place value of each calendar field in a Ts32 (YYYYMMDD).
TS64SEC_PLACES : dict
    Decimal place value of each field in a Ts64Sec (YYYYMMDDHHMMSS).
TS64FRAC_PLACES : dict
    Decimal place value of each field in a Ts64Frac
    (YYYYMMDDHHMMSSXXXXX).
FRAC_SCALE : int
    Fractional units per second in CivilDateTime.frac_1e5 (10 µs units).
PACKED_FRAC_SCALE : int
    Fractional units per second in a PackedTs64 (1/65536 s).
DEFAULT_CENTURY_BASE : int
    Default century base of the PackedTs64 year field.
MIN_YEAR, MAX_YEAR : int
    Supported proleptic Gregorian year range.
BLOCK_SIZE : int
    Rows per packed block and per sparse index entry.
COLUMN_MAGIC, COLUMN_VERSION : int
    Framing bytes of a serialized CompressedColumn.
SEGMENT_MAGIC : bytes
    Magic of a segment file.
SEGMENT_VERSION : int
    Segment file format version.
DEFAULT_BATCH_SIZE, MAX_BATCH_SIZE : int
    BatchBuffer capacity default and recommended upper bound.
CDR_HOURLY_MULTIPLIERS : tuple
    Piecewise constant call intensity multiplier for each hour of the day.
BENCH_WARMUP, BENCH_REPEATS : int
    Default benchmark warmup and measured repetitions.
LEAP_TABLE_ENV : str
    Environment variable pointing to a leap second CSV.
"""

from pathlib import Path


# constants.py path
_here = Path(__file__).parent.resolve()

# Packaged data path
_data = _here / "data"

# =============================================================================
# Decimal positional formats
# =============================================================================
TS32_DATE_PLACES = {"year": 10**4, "month": 10**2, "day": 1}

TS64SEC_PLACES = {
    "year": 10**10,
    "month": 10**8,
    "day": 10**6,
    "hour": 10**4,
    "minute": 10**2,
    "second": 1,
}

FRAC_SCALE = 10**5

TS64FRAC_PLACES = {
    field: place * FRAC_SCALE for field, place in TS64SEC_PLACES.items()
}

MIN_YEAR = 1
MAX_YEAR = 9999

# =============================================================================
# Binary bit-field layout
# =============================================================================
PACKED_FRAC_SCALE = 1 << 16
DEFAULT_CENTURY_BASE = 2000

# field: (bit offset, bit width)
PACKED_LAYOUT = {
    "year": (56, 8),
    "month": (48, 8),
    "day": (40, 8),
    "hour": (32, 8),
    "minute": (24, 8),
    "second": (16, 8),
    "fraction": (0, 16),
}

# =============================================================================
# Compression and storage
# =============================================================================
BLOCK_SIZE = 128

COLUMN_MAGIC = 0xD7
COLUMN_VERSION = 0x01

SEGMENT_MAGIC = b"ITSK"
SEGMENT_VERSION = 1

# =============================================================================
# Ingestion
# =============================================================================
DEFAULT_BATCH_SIZE = 1000
MAX_BATCH_SIZE = 50000

# =============================================================================
# Workloads
# =============================================================================
# Night trough, morning ramp, business hours plateau, evening peak.
CDR_HOURLY_MULTIPLIERS = (
    0.20, 0.12, 0.08, 0.06, 0.06, 0.10,
    0.30, 0.70, 1.10, 1.40, 1.50, 1.50,
    1.40, 1.45, 1.50, 1.45, 1.40, 1.50,
    1.70, 1.80, 1.60, 1.20, 0.80, 0.40,
)  # fmt: skip

# =============================================================================
# Benchmarks
# =============================================================================
BENCH_WARMUP = 3
BENCH_REPEATS = 5

# =============================================================================
# Environment
# =============================================================================
LEAP_TABLE_ENV = "ITSK_LEAP_TABLE"

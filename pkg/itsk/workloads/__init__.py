"""Workloads module.

Deterministic synthetic workloads (HFT trades, call detail records, IoT
telemetry) and the text timestamp baseline used as benchmark control.
"""

from .baseline import (
    BASELINE_RECORD_BYTES,
    INTEGER_RECORD_BYTES,
    BaselineRecord,
    baseline_range_scan,
    baseline_texts,
    format_iso,
    from_baseline,
    parse_iso,
    to_baseline,
)
from .generators import generate, generate_arrays
from .spec import KINDS, WorkloadSpec


__all__ = [
    "BASELINE_RECORD_BYTES",
    "INTEGER_RECORD_BYTES",
    "BaselineRecord",
    "baseline_range_scan",
    "baseline_texts",
    "format_iso",
    "from_baseline",
    "parse_iso",
    "to_baseline",
    "generate",
    "generate_arrays",
    "KINDS",
    "WorkloadSpec",
]

"""Store result types."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import pandas as pd


class BinAggregate(NamedTuple):
    """Aggregate of the values falling in one time bin.

    Parameters
    ----------
    bin_label : int
        Lower bound of the bin (codec.truncate of its timestamps).
    count : int
        Number of rows, at least 1.
    sum : float
        Sum of values.
    min : float
        Smallest value.
    max : float
        Largest value.
    mean : float
        sum / count.
    """

    bin_label: int
    count: int
    sum: float
    min: float
    max: float
    mean: float


@dataclass
class ScanCounters:
    """Work done by reads since the last reset.

    Attributes
    ----------
    partitions_opened : int
        Partitions whose segments were inspected.
    blocks_decompressed : int
        Timestamp blocks decompressed.
    """

    partitions_opened: int = 0
    blocks_decompressed: int = 0

    def reset(self) -> None:
        """Zero both counters."""
        self.partitions_opened = 0
        self.blocks_decompressed = 0


STATS_COLUMNS = [
    "partition",
    "segments",
    "rows",
    "ts_bytes",
    "value_bytes",
    "raw_ts_bytes",
    "ratio",
]


@dataclass
class StorageReport:
    """Storage usage of a Table.

    Attributes
    ----------
    partitions : pandas.DataFrame
        One row per partition with the STATS_COLUMNS columns.
    """

    partitions: pd.DataFrame = field(
        default_factory=lambda: pd.DataFrame(columns=STATS_COLUMNS)
    )

    @property
    def rows(self) -> int:
        """Total row count."""
        return int(self.partitions["rows"].sum())

    @property
    def ts_bytes(self) -> int:
        """Total serialized size of the timestamp columns."""
        return int(self.partitions["ts_bytes"].sum())

    @property
    def value_bytes(self) -> int:
        """Total size of the value columns."""
        return int(self.partitions["value_bytes"].sum())

    @property
    def ratio(self) -> Fraction:
        """Raw over compressed timestamp bytes, 0 for an empty table."""
        if self.ts_bytes == 0:
            return Fraction(0)
        return Fraction(self.rows * 8, self.ts_bytes)

    def to_frame(self) -> pd.DataFrame:
        """Per partition rows followed by a 'total' row."""
        total = pd.DataFrame(
            [
                {
                    "partition": "total",
                    "segments": int(self.partitions["segments"].sum()),
                    "rows": self.rows,
                    "ts_bytes": self.ts_bytes,
                    "value_bytes": self.value_bytes,
                    "raw_ts_bytes": self.rows * 8,
                    "ratio": float(self.ratio),
                }
            ]
        )
        if self.partitions.empty:
            return total
        return pd.concat(
            [self.partitions.astype({"partition": str}), total],
            ignore_index=True,
        )

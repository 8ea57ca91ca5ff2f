"""Store module.

Day partitioned, sorted, sparse indexed columnar storage of
(integer timestamp, value) rows with range queries and bin aggregation.
"""

from .report import BinAggregate, ScanCounters, StorageReport
from .segment import Segment
from .table import Partition, Table


__all__ = [
    "BinAggregate",
    "ScanCounters",
    "StorageReport",
    "Segment",
    "Partition",
    "Table",
]

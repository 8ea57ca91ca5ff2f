"""Ingest module.

Batched write path: buffering, optional stable sorting and batch writes.
"""

from .batch import BatchBuffer, FlushReport, Record, ingest_stream


__all__ = ["BatchBuffer", "FlushReport", "Record", "ingest_stream"]

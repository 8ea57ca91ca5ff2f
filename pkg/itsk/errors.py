"""Errors module.

Every error raised by itsk for bad input or bad data is an ItskError, which
is also a ValueError.
"""


class ItskError(ValueError):
    """Base class of all itsk domain errors.

    Parameters
    ----------
    message : str
        Error message.
    position : int, optional
        Index of the offending record in a stream, by default None.
    """

    def __init__(self, message: str = "", position: int = None) -> None:
        super().__init__(message)
        self.position = position


# =============================================================================
# codec
# =============================================================================
class InvalidDateError(ItskError):
    """Calendar date fields out of range or invalid for the month."""


class InvalidDateTimeError(ItskError):
    """Civil datetime fields out of range."""


class InvalidEncodingError(ItskError):
    """Integer digits do not form a valid instant of the declared format."""


class NonzeroFractionError(ItskError):
    """A seconds resolution format received a fractional second."""


class YearOutOfCenturyError(ItskError):
    """Year outside [century_base, century_base + 99]."""


class UnitFinerThanFormatError(ItskError):
    """Truncation unit finer than the resolution of the format."""


# =============================================================================
# timescale
# =============================================================================
class LeapTableParseError(ItskError):
    """Leap second CSV could not be parsed.

    Parameters
    ----------
    message : str
        Error message.
    line : int
        1-based line number of the error.
    column : int
        1-based column (field) number of the error.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonMonotoneTableError(ItskError):
    """Leap table dates not increasing or offsets decreasing."""


class LeapSecondBoundaryError(ItskError):
    """A second=60 instant that is not an inserted leap second."""


class UnmappableInstantError(ItskError):
    """TAI instant with no UTC counterpart (inside the first entry jump)."""


# =============================================================================
# compression
# =============================================================================
class EmptyInputError(ItskError):
    """An operation requiring a non empty sequence received none."""


class CorruptBlockError(ItskError):
    """Packed block count, width or payload are inconsistent."""


# =============================================================================
# ingest and store
# =============================================================================
class FormatMismatchError(ItskError):
    """Timestamp format differs from the declared one."""


class InvalidTimestampError(ItskError):
    """Timestamp is not a valid encoding of the declared format."""


class UnsortedBatchError(ItskError):
    """Batch handed to the store is not sorted by timestamp."""


class InvalidRangeError(ItskError):
    """Range query with lo > hi."""


class CorruptSegmentError(ItskError):
    """Segment file framing is inconsistent."""


class StoreWriteError(ItskError):
    """A batch could not be written to the store."""


# =============================================================================
# workloads, writers and cli
# =============================================================================
class InvalidSpecError(ItskError):
    """Workload specification is invalid."""


class MalformedBoundError(ItskError):
    """ISO-8601 text bound does not parse."""


class UnknownDialectError(ItskError):
    """DDL dialect not supported."""


class RecordParseError(ItskError):
    """Row of a records CSV could not be parsed.

    Parameters
    ----------
    message : str
        Error message.
    line : int
        1-based line number in the CSV file (header is line 1).
    """

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line

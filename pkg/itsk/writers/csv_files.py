"""CSV writers and readers module.

- Records: UTF-8, header `ts,value`, one integer timestamp and one float
  per line.
- Baseline: UTF-8, header `iso_ts,value`.
"""

import pathlib
import re
from typing import Iterable, Tuple, Union

import numpy as np

import pandas as pd

from itsk.codec import as_format, valid_mask
from itsk.errors import RecordParseError


RECORD_COLUMNS = ["ts", "value"]
BASELINE_COLUMNS = ["iso_ts", "value"]

_DIGITS = re.compile(r"\d{1,20}")
_MAX_U64 = (1 << 64) - 1


def _to_csv(df: pd.DataFrame, path) -> None:
    if hasattr(path, "write"):
        df.to_csv(path, index=False, lineterminator="\n")
        return

    with open(path, "w", newline="", encoding="utf-8") as file:
        df.to_csv(file, index=False, lineterminator="\n")


def write_records_csv(
    ts: np.ndarray,
    values: np.ndarray,
    path: Union[str, pathlib.Path],
) -> int:
    """Write a records CSV.

    Parameters
    ----------
    ts : numpy.ndarray
        Integer timestamps.
    values : numpy.ndarray
        float64 values.
    path : str, pathlib.Path or TextIO
        Output file or text stream.

    Returns
    -------
    int
        Rows written.
    """
    df = pd.DataFrame(
        {
            "ts": np.asarray(ts, dtype=np.uint64),
            "value": np.asarray(values, dtype=np.float64),
        }
    )

    _to_csv(df, path)

    return len(df)


def write_baseline_csv(
    records: Iterable, path: Union[str, pathlib.Path]
) -> int:
    """Write a baseline CSV.

    Parameters
    ----------
    records : Iterable
        BaselineRecord or (ts_text, value) pairs.
    path : str, pathlib.Path or TextIO
        Output file or text stream.

    Returns
    -------
    int
        Rows written.
    """
    df = pd.DataFrame(list(records), columns=BASELINE_COLUMNS)

    _to_csv(df, path)

    return len(df)


def read_records_csv(
    path: Union[str, pathlib.Path], fmt=None
) -> Tuple[np.ndarray, np.ndarray]:
    """Read a records CSV.

    Parameters
    ----------
    path : str or pathlib.Path
        Input file.
    fmt : str or TimestampFormat, optional
        If given, every timestamp must be a valid encoding of fmt.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        uint64 timestamps and float64 values, in file order.

    Raises
    ------
    RecordParseError
        Bad header or row, with its line number (header = line 1).
    """
    try:
        df = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise RecordParseError("Empty file, expected header ts,value", 1)
    except pd.errors.ParserError as error:
        match = re.search(r"line (\d+)", str(error))
        line = int(match.group(1)) if match else 0
        raise RecordParseError(str(error), line)

    if list(df.columns) != RECORD_COLUMNS:
        raise RecordParseError(
            f"Header {','.join(df.columns)!r}, expected 'ts,value'", 1
        )

    df = df.fillna("")

    ts = []
    for row, text in enumerate(df["ts"]):
        text = text.strip()
        if not _DIGITS.fullmatch(text) or int(text) > _MAX_U64:
            raise RecordParseError(f"Bad timestamp {text!r}", row + 2)
        ts.append(int(text))

    values = pd.to_numeric(df["value"], errors="coerce").to_numpy(np.float64)
    literal_nan = df["value"].str.strip().str.lower() == "nan"
    bad = np.flatnonzero(np.isnan(values) & ~literal_nan.to_numpy())
    if bad.size:
        row = int(bad[0])
        raise RecordParseError(
            f"Bad value {df['value'].iloc[row]!r}", row + 2
        )

    ts = np.array(ts, dtype=np.uint64)

    if fmt is not None:
        fmt = as_format(fmt)
        mask = valid_mask(ts, fmt)
        if not mask.all():
            row = int(np.argmin(mask))
            raise RecordParseError(
                f"{int(ts[row])} is not a valid {fmt.value} timestamp",
                row + 2,
            )

    return ts, values

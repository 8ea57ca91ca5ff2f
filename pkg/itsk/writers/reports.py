"""Report writers module."""

from typing import TextIO

import pandas as pd


REPORT_FORMATS = ("text", "csv")


def render_frame(frame: pd.DataFrame, report_format: str = "text") -> str:
    """Render a report table.

    Parameters
    ----------
    frame : pandas.DataFrame
        Report rows.
    report_format : str, optional
        'text' (aligned columns) or 'csv', by default 'text'.

    Returns
    -------
    str
        Rendered table ending with a newline.
    """
    if report_format == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    elif report_format == "text":
        if frame.empty:
            return " ".join(frame.columns) + "\n"
        return frame.to_string(index=False) + "\n"

    raise ValueError(
        f"Format: {report_format!r} not valid, "
        f"use: {', '.join(REPORT_FORMATS)}"
    )


def write_bench_report(
    frame: pd.DataFrame, report_format: str = "text", file: TextIO = None
) -> str:
    """Render a benchmark report and optionally write it.

    Parameters
    ----------
    frame : pandas.DataFrame
        bench.run_bench output.
    report_format : str, optional
        'text' or 'csv', by default 'text'.
    file : TextIO, optional
        Stream receiving the report, by default None.

    Returns
    -------
    str
        Rendered report.
    """
    text = render_frame(frame, report_format)

    if file is not None:
        file.write(text)

    return text

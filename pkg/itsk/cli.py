"""Command line interface.

Subcommands: gen, ingest, query, bench, tai, ddl, stats. Reports go to
standard output, logs to standard error.

Exit codes: 0 success, 1 usage error, 2 data or I/O error, 3 internal
error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import pandas as pd

from itsk import bench
from itsk.codec import TimestampFormat, ts64sec_to_datetime
from itsk.constants import (
    BENCH_REPEATS,
    BENCH_WARMUP,
    DEFAULT_BATCH_SIZE,
    LEAP_TABLE_ENV,
)
from itsk.errors import ItskError
from itsk.ingest import ingest_stream
from itsk.store import Table
from itsk.timescale import (
    default_leap_table,
    read_leap_table,
    tai_to_utc,
    utc_to_tai,
)
from itsk.workloads import (
    KINDS,
    WorkloadSpec,
    generate_arrays,
    parse_iso,
    to_baseline,
)
from itsk.writers import (
    DIALECTS,
    REPORT_FORMATS,
    read_records_csv,
    render_frame,
    to_ddl,
    write_bench_report,
    write_baseline_csv,
    write_records_csv,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

UNITS = ("minute", "hour", "day", "month")
STORED_FORMATS = (
    TimestampFormat.TS64SEC.value,
    TimestampFormat.TS64FRAC.value,
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser exiting with EXIT_USAGE on bad command lines."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    if not text.isdigit() or int(text) >= 1 << 64:
        raise argparse.ArgumentTypeError(f"not an unsigned integer: {text!r}")
    return int(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _int_list(text: str) -> List[int]:
    return [_positive_int(part) for part in text.split(",") if part]


def _name_list(choices):
    def parse(text: str) -> List[str]:
        names = [part for part in text.split(",") if part]
        for name in names:
            if name not in choices:
                raise argparse.ArgumentTypeError(
                    f"{name!r} not in {', '.join(choices)}"
                )
        return names

    return parse


def _iso_start(text: str):
    try:
        return ts64sec_to_datetime(parse_iso(text))
    except ItskError as error:
        raise argparse.ArgumentTypeError(str(error))


# =============================================================================
# Subcommands
# =============================================================================
def cmd_gen(args) -> int:
    """Write a generated workload as a records CSV."""
    duration = args.seconds + 60 * args.minutes + 3600 * args.hours

    spec = WorkloadSpec(
        args.kind,
        args.start,
        duration,
        rate=args.rate,
        seed=args.seed,
        devices=args.devices,
        cadence=args.cadence,
        fmt=args.format,
    )
    ts, values = generate_arrays(spec)

    out = sys.stdout if args.out == "-" else args.out
    rows = write_records_csv(ts, values, out)

    if args.baseline:
        if spec.fmt is not TimestampFormat.TS64SEC:
            raise ItskError("The text baseline needs --format ts64sec")
        baseline = to_baseline(zip(ts.tolist(), values.tolist()))
        write_baseline_csv(baseline, args.baseline)

    message = f"{rows} records"
    print(message, file=sys.stderr if args.out == "-" else sys.stdout)

    return EXIT_OK


def cmd_ingest(args) -> int:
    """Ingest a records CSV into a table directory."""
    try:
        table = Table.open(args.table)
    except FileNotFoundError:
        table = Table(args.format, args.table)

    ts, values = read_records_csv(args.input, table.fmt)

    report = ingest_stream(
        zip(ts.tolist(), values.tolist()), args.batch_size, args.sort, table
    )

    print(
        f"Ingested {report.records_flushed} records in {report.batches} "
        f"batches ({report.segments_created} segments, "
        f"{report.wall_time:.6f} s, {report.throughput:.0f} records/s)"
    )

    return EXIT_OK


def cmd_query(args) -> int:
    """Range query or bin aggregation over a table directory."""
    table = Table.open(args.table)

    if args.bin is None:
        ts, values = table.range_arrays(args.lo, args.hi)
        frame = pd.DataFrame({"ts": ts, "value": values})
    else:
        bins = table.aggregate_bins(args.lo, args.hi, args.bin)
        frame = pd.DataFrame(
            bins, columns=["bin", "count", "sum", "min", "max", "mean"]
        )

    sys.stdout.write(render_frame(frame, args.report_format))

    return EXIT_OK


def cmd_bench(args) -> int:
    """Benchmark the integer and baseline arms."""
    frame = bench.run_bench(
        scenarios=args.scenario,
        records=args.records,
        batch_sizes=args.batch_sizes,
        arms=args.arms,
        operations=args.operations,
        seed=args.seed,
        warmup=args.warmup,
        repeats=args.repeats,
    )

    if args.out == "-":
        write_bench_report(frame, args.report_format, sys.stdout)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as file:
            write_bench_report(frame, args.report_format, file)

    return EXIT_OK


def cmd_tai(args) -> int:
    """Convert between UTC and TAI Ts64Frac timestamps."""
    if args.table is not None:
        table = read_leap_table(args.table)
    else:
        table = default_leap_table()

    if args.utc is not None:
        print(utc_to_tai(args.utc, table))
    else:
        print(tai_to_utc(args.tai, table))

    return EXIT_OK


def cmd_ddl(args) -> int:
    """Print the DDL of a dialect."""
    sys.stdout.write(to_ddl(args.dialect))
    return EXIT_OK


def cmd_stats(args) -> int:
    """Print the storage report of a table directory."""
    table = Table.open(args.table)
    frame = table.stats().to_frame()
    sys.stdout.write(render_frame(frame, args.report_format))
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================
def build_parser() -> argparse.ArgumentParser:
    """Build the itsk argument parser.

    Returns
    -------
    argparse.ArgumentParser
        Parser with one subparser per subcommand.
    """
    parser = _Parser(
        prog="itsk",
        description="Integer timestamp codec and micro storage engine.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="-v for INFO logs, -vv for DEBUG logs (standard error)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    # gen
    p = sub.add_parser("gen", help="write a synthetic workload CSV")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--start", type=_iso_start, default="2023-01-01T00:00:00")
    p.add_argument("--seconds", type=float, default=0.0)
    p.add_argument("--minutes", type=float, default=0.0)
    p.add_argument("--hours", type=float, default=0.0)
    p.add_argument("--rate", type=float, help="events per second")
    p.add_argument("--devices", type=_positive_int, default=1)
    p.add_argument("--cadence", type=float, help="iot seconds per report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=STORED_FORMATS, default="ts64sec")
    p.add_argument("--out", default="-", help="records CSV, - for stdout")
    p.add_argument("--baseline", help="also write an iso_ts,value CSV")
    p.set_defaults(func=cmd_gen)

    # ingest
    p = sub.add_parser("ingest", help="ingest a records CSV into a table")
    p.add_argument("input")
    p.add_argument("table")
    p.add_argument(
        "--batch-size", type=_positive_int, default=DEFAULT_BATCH_SIZE
    )
    p.add_argument(
        "--sort", action=argparse.BooleanOptionalAction, default=True
    )
    p.add_argument(
        "--format",
        choices=STORED_FORMATS,
        default="ts64sec",
        help="format of a new table",
    )
    p.set_defaults(func=cmd_ingest)

    # query
    p = sub.add_parser("query", help="range query or bin aggregation")
    p.add_argument("table")
    p.add_argument("--from", dest="lo", type=_u64, required=True)
    p.add_argument("--to", dest="hi", type=_u64, required=True)
    p.add_argument("--bin", choices=UNITS)
    p.add_argument(
        "--format", dest="report_format", choices=REPORT_FORMATS,
        default="text",
    )
    p.set_defaults(func=cmd_query)

    # bench
    p = sub.add_parser("bench", help="benchmark integer vs text baseline")
    p.add_argument(
        "--scenario", type=_name_list(KINDS), default=["iot"],
        help="comma separated: " + ",".join(KINDS),
    )
    p.add_argument("--records", type=_positive_int, default=10**5)
    p.add_argument(
        "--batch-sizes", type=_int_list, default=[1, 100, 1000, 10000]
    )
    p.add_argument(
        "--arms", type=_name_list(bench.ARMS), default=list(bench.ARMS)
    )
    p.add_argument(
        "--operations",
        type=_name_list(bench.OPERATIONS),
        default=list(bench.OPERATIONS),
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--warmup", type=int, default=BENCH_WARMUP)
    p.add_argument("--repeats", type=_positive_int, default=BENCH_REPEATS)
    p.add_argument(
        "--format", dest="report_format", choices=REPORT_FORMATS,
        default="text",
    )
    p.add_argument("--out", default="-", help="report file, - for stdout")
    p.set_defaults(func=cmd_bench)

    # tai
    p = sub.add_parser("tai", help="UTC <-> TAI for Ts64Frac timestamps")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--utc", type=_u64)
    group.add_argument("--tai", type=_u64)
    p.add_argument(
        "--table", help=f"leap second CSV, by default ${LEAP_TABLE_ENV}"
    )
    p.set_defaults(func=cmd_tai)

    # ddl
    p = sub.add_parser("ddl", help="print integer timestamp DDL")
    p.add_argument("--dialect", required=True, choices=DIALECTS)
    p.set_defaults(func=cmd_ddl)

    # stats
    p = sub.add_parser("stats", help="storage report of a table")
    p.add_argument("table")
    p.add_argument(
        "--format", dest="report_format", choices=REPORT_FORMATS,
        default="text",
    )
    p.set_defaults(func=cmd_stats)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Run the itsk command line.

    Parameters
    ----------
    argv : List[str], optional
        Arguments without the program name, by default sys.argv[1:].

    Returns
    -------
    int
        Exit code.
    """
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)

    try:
        return args.func(args)
    except (ItskError, OSError) as error:
        print(f"itsk: error: {error}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        logger.exception("Internal error")
        return EXIT_INTERNAL

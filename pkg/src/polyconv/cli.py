"""Command-line interface.

Exit codes: 0 success, 1 unreadable input, 2 invalid parameters (including
a Hankel part that is not PSD for the requested parameters), 3 rank cap
exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .bench import BENCH_COLUMNS, RANK_COLUMNS, run_bench, run_rank_profile
from .coeffio import CoefficientFileError, format_binary, format_text, read_coefficients
from .conversions import Basis, ConversionReport, convert
from .errors import ContractViolation, InvalidParameter, NotPsd, PoleError, RankCapExceeded
from .lowrank import DEFAULT_EPS

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_RANK_CAP = 3


def _sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyconv",
        description="Convert polynomial coefficients between orthogonal bases.",
        epilog="Bases: legendre, chebyshev, ultraspherical:LAMBDA, jacobi:ALPHA,BETA, laguerre:ALPHA",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convert", help="convert a coefficient file")
    conv.add_argument("input", help="text or PXF1 binary coefficient file")
    conv.add_argument("--from", dest="src", help="source basis (default: the file header)")
    conv.add_argument("--to", dest="dst", required=True, help="target basis")
    conv.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS, help="Hankel compression tolerance")
    conv.add_argument("--binary", action="store_true", help="write PXF1 binary instead of text")
    conv.add_argument("--output", "-o", help="output path (default: standard output)")

    bench = sub.add_parser("bench", help="time direct and fast conversions")
    bench.add_argument("--from", dest="src", default="legendre")
    bench.add_argument("--to", dest="dst", default="chebyshev")
    bench.add_argument(
        "--sizes", type=_sizes, default=[256, 1024, 4096], help="comma-separated coefficient counts"
    )
    bench.add_argument("--decay", type=float, default=1.5, help="coefficient n is scaled by (n+1)^-decay")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)
    bench.add_argument("--output", "-o", help="CSV path (default: standard output)")

    rank = sub.add_parser("rank-profile", help="pivoted Cholesky rank of the Hankel part")
    rank.add_argument("--from", dest="src", default="legendre")
    rank.add_argument("--to", dest="dst", default="chebyshev")
    rank.add_argument(
        "--sizes", type=_sizes, default=[100, 300, 1000, 10000], help="comma-separated Hankel dimensions"
    )
    rank.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)
    rank.add_argument("--output", "-o", help="CSV path (default: standard output)")
    return parser


def _emit(data, path: Optional[str]) -> None:
    if path is None:
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
    elif isinstance(data, bytes):
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(data)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


def cmd_convert(args) -> int:
    try:
        cfile = read_coefficients(args.input)
    except (OSError, CoefficientFileError) as err:
        print(f"polyconv: {err}", file=sys.stderr)
        return EXIT_PARSE
    src = Basis.parse(args.src) if args.src else None
    dst = Basis.parse(args.dst)
    cv = cfile.vector(src)
    report = ConversionReport()
    start = time.perf_counter()
    out = convert(cv, dst, eps=args.eps, method="auto", report=report)
    elapsed = time.perf_counter() - start
    _emit(format_binary(out.values) if args.binary else format_text(out), args.output)
    rank = report.max_rank
    print(f"N={out.degree} K={rank if rank is not None else '-'} seconds={elapsed:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = run_bench(Basis.parse(args.src), Basis.parse(args.dst), args.sizes, args.decay, args.seed, args.eps)
    _emit(_csv(BENCH_COLUMNS, rows), args.output)
    return EXIT_OK


def cmd_rank_profile(args) -> int:
    rows = run_rank_profile(Basis.parse(args.src), Basis.parse(args.dst), args.sizes, args.eps)
    _emit(_csv(RANK_COLUMNS, rows), args.output)
    return EXIT_OK


_COMMANDS = {"convert": cmd_convert, "bench": cmd_bench, "rank-profile": cmd_rank_profile}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except RankCapExceeded as err:
        print(f"polyconv: {err}", file=sys.stderr)
        return EXIT_RANK_CAP
    except (InvalidParameter, ContractViolation, PoleError, NotPsd) as err:
        print(f"polyconv: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

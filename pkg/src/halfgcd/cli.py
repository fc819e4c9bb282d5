"""Command-line entry point.

Exit codes: 0 success, 1 failed computation or self-test, 2 bad input or
usage, 3 field or size the library cannot handle.
"""

from __future__ import annotations

import argparse
import sys

from . import bench, polyfile, selftest
from .errors import AbnormalSequence, HalfGcdError, PreconditionViolated, Undefined, UnsupportedLength
from .field import BENCH_PRIME
from .gcd import ALGORITHMS, GcdConfig, half_gcd, xgcd
from .hgcd import DEFAULT_THRESHOLD
from .polynomial import Poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _int_list(text: str, doubling: bool = False) -> list[int]:
    """``"1,2,5"`` or ranges ``"a..b"``; size ranges step by doubling."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            lo, hi = (int(x) for x in part.split("..", 1))
            if doubling:
                if lo < 1:
                    raise ValueError(f"bad size range {part!r}")
                while lo <= hi:
                    out.append(lo)
                    lo *= 2
            else:
                out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return out


def _read_polys(path: str, count: int | None = None):
    try:
        if path == "-":
            field, polys = polyfile.parse(sys.stdin.read())
        else:
            field, polys = polyfile.read(path)
    except polyfile.UnsupportedField as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    except polyfile.PolyFileError as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from None
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from None
    if count is not None and len(polys) != count:
        raise CliError(f"{path}: expected {count} polynomials, found {len(polys)}", EXIT_USAGE)
    return field, polys


def _config(args) -> GcdConfig:
    return GcdConfig(args.alg, args.threshold, fallback=not args.no_fallback)


def cmd_gcd(args) -> int:
    field, (P, Q) = _read_polys(args.file, 2)
    r = xgcd(P, Q, _config(args))
    sys.stdout.write(polyfile.emit(field, [r.g]))
    return EXIT_OK


def cmd_xgcd(args) -> int:
    field, (P, Q) = _read_polys(args.file, 2)
    r = xgcd(P, Q, _config(args))
    sys.stdout.write(polyfile.emit(field, [r.g, r.u, r.v]))
    return EXIT_OK


def cmd_hgcd(args) -> int:
    field, (P, Q) = _read_polys(args.file, 2)
    if args.k < 0:
        raise CliError("--k must be nonnegative", EXIT_USAGE)
    M = half_gcd(P, Q, args.k, args.alg, args.threshold)
    sys.stdout.write(polyfile.emit(field, list(M.entries)))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        algs = [a.strip() for a in args.alg.split(",") if a.strip()]
        sizes = _int_list(args.sizes, doubling=True)
        seeds = _int_list(args.seeds)
    except ValueError as exc:
        raise CliError(f"bad list: {exc}", EXIT_USAGE) from None
    try:
        jobs = bench.plan_jobs(
            algs,
            sizes,
            seeds,
            generator=args.inputs,
            threshold=args.threshold,
            exact_accounting=args.exact_accounting,
            p=args.prime,
            timing=not args.no_timing,
        )
    except bench.BenchError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    except bench.SizeUnsupported as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    rows = bench.run(jobs, args.jobs)
    text = bench.to_csv(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(args.filter, inject_fault=args.inject_fault)
    if not results:
        raise CliError(f"no fixture matches {args.filter!r}", EXIT_USAGE)
    failed = [r for r in results if not r.ok]
    for r in results:
        line = f"{'ok  ' if r.ok else 'FAIL'} {r.name}"
        if not r.ok:
            line += f"  -- {r.detail}"
        print(line)
    print(f"{len(results) - len(failed)}/{len(results)} fixtures passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="halfgcd", description="Polynomial gcd via half-gcd, with operation-count benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def gcd_flags(p):
        p.add_argument("file", help="polynomial file ('-' for stdin)")
        p.add_argument("--alg", choices=ALGORITHMS, default=None, help="half-gcd algorithm (default: general-fft when the field allows, else general)")
        p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD, help="base-case size")

    p = sub.add_parser("gcd", help="monic gcd of the two polynomials in a file")
    gcd_flags(p)
    p.add_argument("--no-fallback", action="store_true", help="fail instead of switching to the general algorithm on abnormal input")
    p.set_defaults(run=cmd_gcd)

    p = sub.add_parser("xgcd", help="gcd g and cofactors u, v with uP + vQ = g")
    gcd_flags(p)
    p.add_argument("--no-fallback", action="store_true")
    p.set_defaults(run=cmd_xgcd)

    p = sub.add_parser("hgcd", help="half-gcd matrix B*_{1;k+1}, printed as m11, m12, m21, m22")
    gcd_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=cmd_hgcd)

    p = sub.add_parser("bench", help="operation counts as CSV")
    p.add_argument("--alg", required=True, help=f"comma list from: {', '.join(bench.BENCH_ALGORITHMS)}")
    p.add_argument("--sizes", required=True, help="comma list of powers of two; a..b doubles from a to b")
    p.add_argument("--seeds", default="0", help="comma list or a..b range (default 0)")
    p.add_argument("--inputs", choices=bench.GENERATORS, default="auto", help="instance generator (auto: normal for normal-case algorithms)")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--exact-accounting", action="store_true", help="force threshold 1 so every node is counted by the recursion")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the wall_time_ns column")
    p.add_argument("--prime", type=int, default=BENCH_PRIME)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=cmd_bench)

    p = sub.add_parser("selftest", help="run the built-in fixture suite")
    p.add_argument("--filter", default=None, help="tag or name substring")
    p.add_argument("--inject-fault", action="store_true", help="test hook: corrupt a twiddle table first")
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CliError as exc:
        print(f"halfgcd: {exc}", file=sys.stderr)
        return exc.code
    except UnsupportedLength as exc:
        print(f"halfgcd: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (PreconditionViolated, Undefined) as exc:
        print(f"halfgcd: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AbnormalSequence, HalfGcdError) as exc:
        print(f"halfgcd: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

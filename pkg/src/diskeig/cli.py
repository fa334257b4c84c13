"""Command-line front end.

Subcommands:
    count           count the eigenvalues inside a disk (JSON report)
    eigs            compute the eigenpairs inside a disk (JSON report)
    filter-profile  sample the scalar filter on a polar grid (CSV)
    benchmark       8x8 filter-diagonal vs counting-matrix comparison

Exit codes: 0 ok, 2 usage, 3 input parse, 4 numerical failure,
5 not converged.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .counting import DELTA_BAND, count_eigs
from .errors import (
    AllNodesSingular,
    DiskeigError,
    MatrixMarketError,
    MaxRoundsExceeded,
)
from .mmio import read_matrix_market
from .oracle import (
    BENCHMARK_Q,
    benchmark_table_csv,
    benchmark_table_text,
    diagonal_benchmark,
)
from .projector import Pencil
from .quadrature import Disk, contour_rule, filter_profile, write_profile_csv
from .report import count_report_dict, eigenpairs_dict, to_json
from .search import SearchConfig
from .solver import EigsConfig, refine_eigenpairs

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERICAL = 4
EXIT_NOT_CONVERGED = 5


def parse_complex(text):
    """Parse 'a', 'a+bi', 'a-bi' (scientific notation allowed) to complex."""
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex scalar {text!r}") from None


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
    return v


def _add_disk_args(p):
    p.add_argument("--center", type=parse_complex, required=True,
                   help="disk center, e.g. '-6e5+2e5i'")
    p.add_argument("--radius", type=_positive_float, required=True)


def _add_pencil_args(p):
    p.add_argument("--a", required=True, metavar="FILE",
                   help="Matrix Market file for A")
    p.add_argument("--b", metavar="FILE",
                   help="Matrix Market file for B (omitted: B = identity)")


def _add_search_args(p):
    p.add_argument("--q", type=int, default=16, help="quadrature node count")
    p.add_argument("--p", type=int, default=10, dest="p0",
                   help="initial sample-vector count")
    p.add_argument("--alpha", type=float, default=1.5, help="block growth factor")
    p.add_argument("--seed", type=int, default=0, help="sampling RNG seed")
    p.add_argument("--max-rounds", type=int, default=8)
    p.add_argument("--delta-band", type=float, default=DELTA_BAND,
                   help="warning band half-width around Re = 1/2")


def _add_common_args(p):
    p.add_argument("--threads", type=int, default=1,
                   help="node-level parallelism (1 = bit-reproducible)")
    p.add_argument("--output", "-o", metavar="FILE", help="write report here instead of stdout")
    p.add_argument("--plot", metavar="FILE", help="also render a figure to this file")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the report (breaks rerun byte-identity)")
    p.add_argument("--verbose", "-v", action="count", default=0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diskeig",
        description="Count and compute generalized eigenvalues inside a disk "
                    "via contour quadrature.",
    )
    parser.add_argument("--version", action="version", version=f"diskeig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="count eigenvalues inside a disk")
    _add_pencil_args(p_count)
    _add_disk_args(p_count)
    _add_search_args(p_count)
    _add_common_args(p_count)

    p_eigs = sub.add_parser("eigs", help="compute eigenpairs inside a disk")
    _add_pencil_args(p_eigs)
    _add_disk_args(p_eigs)
    _add_search_args(p_eigs)
    p_eigs.add_argument("--eps", type=_positive_float, default=1e-10,
                        help="relative residual tolerance")
    p_eigs.add_argument("--max-iter", type=int, default=20)
    p_eigs.add_argument("--vectors", action="store_true",
                        help="include eigenvectors in the JSON report")
    _add_common_args(p_eigs)

    p_prof = sub.add_parser("filter-profile", help="sample the scalar filter (CSV)")
    p_prof.add_argument("--center", type=parse_complex, default=0j)
    p_prof.add_argument("--radius", type=_positive_float, default=1.0)
    p_prof.add_argument("--q", type=int, default=16)
    p_prof.add_argument("--r-max", type=_positive_float, default=4.0)
    p_prof.add_argument("--samples", type=int, default=200, help="samples per grid axis")
    _add_common_args(p_prof)

    p_bench = sub.add_parser(
        "benchmark",
        help="8x8 similarity benchmark: filter diagonal vs counting matrix",
    )
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--q", type=int, default=BENCHMARK_Q)
    p_bench.add_argument("--csv", action="store_true", help="emit CSV instead of aligned text")
    _add_common_args(p_bench)
    return parser


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_pencil(args):
    a = read_matrix_market(args.a)
    b = read_matrix_market(args.b) if args.b else None
    return Pencil(a, b)


def _threads(args):
    return args.threads if args.threads and args.threads > 1 else None


def cmd_count(args):
    pencil = _load_pencil(args)
    disk = Disk(args.center, args.radius)
    config = SearchConfig(alpha=args.alpha, p=args.p0, q=args.q,
                          rng_seed=args.seed, max_rounds=args.max_rounds)
    report = count_eigs(pencil, disk, config, delta_band=args.delta_band,
                        threads=_threads(args))
    _emit(to_json(count_report_dict(report, include_timings=args.timings)), args.output)
    if args.plot:
        from .plots import render_counting_spectrum
        render_counting_spectrum(report.mu_eigs, args.plot)
    return EXIT_OK


def cmd_eigs(args):
    pencil = _load_pencil(args)
    disk = Disk(args.center, args.radius)
    config = EigsConfig(alpha=args.alpha, p=args.p0, q=args.q,
                        rng_seed=args.seed, max_rounds=args.max_rounds,
                        eps=args.eps, max_iter=args.max_iter)
    result = refine_eigenpairs(pencil, disk, config, threads=_threads(args))
    _emit(to_json(eigenpairs_dict(result, include_timings=args.timings,
                                  include_vectors=args.vectors)), args.output)
    if args.plot:
        from .plots import render_counting_spectrum
        render_counting_spectrum(result.count_report.mu_eigs, args.plot)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_filter_profile(args):
    disk = Disk(args.center, args.radius)
    rule = contour_rule(disk, args.q)
    samples = filter_profile(rule, args.r_max, args.samples)
    if args.output:
        write_profile_csv(args.output, samples)
    else:
        write_profile_csv(sys.stdout, samples)
    if args.plot:
        from .plots import render_filter_profile
        render_filter_profile(samples, args.plot, radius=args.radius)
    return EXIT_OK


def cmd_benchmark(args):
    result = diagonal_benchmark(seed=args.seed, q=args.q)
    text = benchmark_table_csv(result) if args.csv else benchmark_table_text(result)
    _emit(text, args.output)
    if args.plot:
        from .plots import render_benchmark
        render_benchmark(result, args.plot)
    return EXIT_OK


_HANDLERS = {
    "count": cmd_count,
    "eigs": cmd_eigs,
    "filter-profile": cmd_filter_profile,
    "benchmark": cmd_benchmark,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose >= 2 else
        logging.INFO if args.verbose == 1 else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _HANDLERS[args.command](args)
    except (MatrixMarketError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"diskeig: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MaxRoundsExceeded as exc:
        print(f"diskeig: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (DiskeigError, AllNodesSingular, ValueError) as exc:
        print(f"diskeig: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

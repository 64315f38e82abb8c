"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 enumeration cap exceeded,
3 cross-check mismatch, 4 incomplete sweep, 5 degenerate merger,
6 crossing (or asymmetric) observed pattern, 7 output write failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import counting, matchings, spectral
from .matchings import CapExceeded, InvalidMatching, ParseError

EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_MISMATCH = 3
EXIT_INCOMPLETE = 4
EXIT_DEGENERATE = 5
EXIT_CROSSING = 6
EXIT_WRITE = 7

CAP_ENV = "SPECTRA_ENUM_CAP"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _cap(args: argparse.Namespace) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise _Fail(EXIT_USAGE, f"{CAP_ENV}={env!r} is not an integer") from None
    return matchings.DEFAULT_CAP


def cmd_enumerate(args: argparse.Namespace) -> int:
    fn = matchings.enumerate_symmetric if args.symmetric else matchings.enumerate_noncrossing
    try:
        patterns = fn(args.J, cap=_cap(args))
    except CapExceeded as exc:
        raise _Fail(EXIT_CAP, str(exc)) from None
    symbols = [matchings.format_symbol(p) for p in patterns]
    if args.format == "json":
        print(json.dumps(symbols))
    else:
        sys.stdout.write("".join(s + "\n" for s in symbols))
    print(f"count: {len(symbols)}", file=sys.stderr)
    return 0


_ROUTES: dict[str, dict[str, Callable[[int], list[int]]]] = {
    "T": {
        "recurrence": counting.t_table,
        "closed": lambda n: [counting.count_T_closed(j) for j in range(n + 1)],
        "series": lambda n: list(counting.series_f(n + 1)),
    },
    "P": {
        "recurrence": counting.p_table,
        "closed": lambda n: [counting.count_P_closed(j) for j in range(n + 1)],
        "series": lambda n: list(counting.series_g(n + 1)),
    },
}


def cmd_count(args: argparse.Namespace) -> int:
    which = ["T", "P"] if args.which == "both" else [args.which]
    routes = ["recurrence", "closed", "series"] if args.route == "all" else [args.route]
    columns = []
    for name in which:
        tables = {r: _ROUTES[name][r](args.J_max) for r in routes}
        reference = tables[routes[0]]
        for r in routes[1:]:
            for j, (x, y) in enumerate(zip(reference, tables[r])):
                if x != y:
                    raise _Fail(EXIT_MISMATCH, f"{name} mismatch at J={j}: {routes[0]}={x} {r}={y}")
        columns.append(reference)
    lines = ["\t".join(["J"] + which)]
    for j in range(args.J_max + 1):
        lines.append("\t".join([str(j)] + [str(col[j]) for col in columns]))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _verify_checks(enum_max: int, series_max: int, cap: int) -> list[tuple[str, Callable[[], bool]]]:
    def enumeration_sizes() -> bool:
        return all(
            len(matchings.enumerate_noncrossing(j, cap)) == counting.count_T_closed(j)
            for j in range(1, enum_max + 1)
        )

    def enumeration_noncrossing() -> bool:
        return all(
            matchings.is_noncrossing(p)
            for j in range(1, enum_max + 1)
            for p in matchings.iter_noncrossing(j, cap)
        )

    def symmetric_subset() -> bool:
        for j in range(1, enum_max + 1):
            direct = set(matchings.enumerate_symmetric(j, cap))
            filtered = {p for p in matchings.iter_noncrossing(j, cap) if matchings.is_centrally_symmetric(p)}
            if direct != filtered or len(direct) != counting.count_P_closed(j):
                return False
        return True

    def recurrences() -> bool:
        return counting.t_table(series_max) == [counting.count_T_closed(j) for j in range(series_max + 1)] and (
            counting.p_table(series_max) == [counting.count_P_closed(j) for j in range(series_max + 1)]
        )

    def series() -> bool:
        order = series_max + 1
        return list(counting.series_f(order)) == [counting.count_T_closed(j) for j in range(order)] and (
            list(counting.series_g(order)) == [counting.count_P_closed(j) for j in range(order)]
        )

    def table() -> bool:
        return [counting.count_P_closed(j) for j in range(9)] == [1, 1, 2, 3, 6, 10, 20, 35, 70]

    return [
        (f"enumeration size = Catalan (J=1..{enum_max})", enumeration_sizes),
        (f"enumerated patterns are non-crossing (J=1..{enum_max})", enumeration_noncrossing),
        (f"symmetric enumeration = reflection-fixed filter, size = C(J, J//2) (J=1..{enum_max})", symmetric_subset),
        (f"recurrences = closed forms (J=0..{series_max})", recurrences),
        (f"series coefficients = closed forms (J=0..{series_max})", series),
        ("P(0..16) = 1 1 2 3 6 10 20 35 70", table),
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    cap = _cap(args)
    if args.enum > cap:
        raise _Fail(EXIT_CAP, f"--enum {args.enum} exceeds the enumeration cap {cap}")
    failed = 0
    for name, check in _verify_checks(args.enum, args.series, cap):
        ok = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print("all checks passed" if not failed else f"{failed} check(s) failed")
    return EXIT_MISMATCH if failed else 0


def _tolerances(args: argparse.Namespace) -> spectral.Tolerances:
    return spectral.Tolerances(rel_im=args.eps_im, rel_gap=args.eps_gap, lam=args.eps_lambda)


def _load_family(path: str) -> spectral.MatrixFamily:
    try:
        return spectral.MatrixFamily.load(path)
    except (OSError, ValueError, TypeError) as exc:
        raise _Fail(EXIT_USAGE, f"cannot read family config {path}: {exc}") from None


def _spectral_failure(exc: spectral.SpectralError) -> _Fail:
    if isinstance(exc, spectral.IncompleteSweep):
        return _Fail(EXIT_INCOMPLETE, str(exc))
    if isinstance(exc, spectral.DegenerateMerger):
        return _Fail(EXIT_DEGENERATE, str(exc))
    if isinstance(exc, (spectral.CrossingPattern, spectral.NotSymmetric)):
        events = getattr(exc, "events", ())
        detail = "".join(f"\n  {json.dumps(e.to_json())}" for e in events)
        return _Fail(EXIT_CROSSING, str(exc) + detail)
    return _Fail(EXIT_USAGE, str(exc))


def cmd_classify(args: argparse.Namespace) -> int:
    fam = _load_family(args.config)
    try:
        observed = spectral.classify(fam, args.lambda_max, args.steps, _tolerances(args))
    except spectral.SpectralError as exc:
        raise _spectral_failure(exc) from None
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    print(matchings.format_symbol(observed.pattern))
    print(spectral.events_to_json(observed.events))
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    try:
        pattern = matchings.parse_symbol(args.symbol)
        fam = spectral.build_witness(pattern, scale=args.scale)
    except (ParseError, InvalidMatching, spectral.CrossingPattern, spectral.NotSymmetric) as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    lam_max = spectral.suggested_lambda_max(pattern)
    text = json.dumps(fam.to_config(), indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        print(f"suggested lambda_max: {lam_max}", file=sys.stderr)
        return 0
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise _Fail(EXIT_WRITE, f"cannot write {args.out}: {exc}") from None
    print(f"suggested lambda_max: {lam_max}")
    return 0


def cmd_paths(args: argparse.Namespace) -> int:
    fam = _load_family(args.config)
    try:
        paths = spectral.track_paths(fam, args.lambda_max, args.steps, _tolerances(args))
    except spectral.SpectralError as exc:
        raise _spectral_failure(exc) from None
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    text = spectral.paths_to_csv(paths)
    if args.out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(EXIT_WRITE, f"cannot write {args.out}: {exc}") from None
    return 0


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _steps(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confluence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list non-crossing (or symmetric) merger patterns")
    p.add_argument("-J", type=_positive_int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--format", choices=["symbols", "json"], default="symbols")
    p.add_argument("--cap", type=_positive_int, help=f"enumeration cap (default {matchings.DEFAULT_CAP}, env {CAP_ENV})")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="tabulate T and P by recurrence, closed form or series")
    p.add_argument("--J-max", dest="J_max", type=_nonneg_int, required=True)
    p.add_argument("--which", choices=["T", "P", "both"], default="both")
    p.add_argument("--route", choices=["recurrence", "closed", "series", "all"], default="closed")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run the enumeration / recurrence / closed form / series agreement suite")
    p.add_argument("--enum", type=_nonneg_int, default=10)
    p.add_argument("--series", type=_nonneg_int, default=100)
    p.add_argument("--cap", type=_positive_int)
    p.set_defaults(func=cmd_verify)

    def spectral_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("config", help="family config JSON")
        p.add_argument("--lambda-max", dest="lambda_max", type=_positive_float, required=True)
        p.add_argument("--steps", type=_steps, default=1000)
        p.add_argument("--eps-im", dest="eps_im", type=_positive_float, default=1e-8)
        p.add_argument("--eps-gap", dest="eps_gap", type=_positive_float, default=1e-8)
        p.add_argument("--eps-lambda", dest="eps_lambda", type=_positive_float, default=1e-6)

    p = sub.add_parser("classify", help="detect the merger pattern realised by a family")
    spectral_options(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="write a family realising a symmetric pattern")
    p.add_argument("symbol")
    p.add_argument("-o", "--out")
    p.add_argument("--scale", type=_positive_float, default=1.0)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("paths", help="export tracked eigenvalue paths as CSV")
    spectral_options(p)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_paths)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

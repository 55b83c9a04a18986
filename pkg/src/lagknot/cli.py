"""Command-line interface: ``lagknot <command> ...``.

Exit codes: 0 success, 2 parse/validation failure or bad arguments,
3 an obstruction report with only inapplicable verdicts under ``--strict``,
4 a correction table whose entries are not pairwise distinct.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .diagram import PDCode, format_pd, parse_pd
from .dtcode import dt_parse, dt_realize_knot, dt_validate
from .errors import KnotError
from .homfly import MemoCache, homfly
from .legendrian import (
    ObstructionReport,
    front_invariants,
    front_parse,
    obstruct_chantraine,
    obstruct_generalized_square,
    obstruct_kkbar,
)
from .tangledsl import dsl_compile, dsl_parse, template_instantiate, template_parse
from .volume import DEFAULT_VOL_M, distinct_corrections, monotonicity_check, vol_estimate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INAPPLICABLE = 3
EXIT_NOT_DISTINCT = 4

_EXTENSIONS = {".pd": "pd", ".dt": "dt", ".tangle": "tangle", ".front": "front"}


class UsageError(Exception):
    """Bad command-line arguments; reported with exit code 2."""


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    cache_path: str | None = None
    output_format: str = "text"
    vol_m: float | None = None
    verify_cache: bool = False


def _detect_format(path, override):
    if override:
        return override
    ext = os.path.splitext(path)[1].lower()
    if ext not in _EXTENSIONS:
        raise UsageError(
            f"cannot infer the input format of {path!r}; use --input-format "
            f"({', '.join(sorted(set(_EXTENSIONS.values())))})"
        )
    return _EXTENSIONS[ext]


def _read(path):
    if path == "-":
        return sys.stdin.read()
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_bindings(items):
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            sep = ""
        if not sep or not name.strip():
            raise UsageError(f"bad --bind {item!r}; expected name=integer")
    return out


def _load_tangle(text, args):
    if any(line.split("#", 1)[0].strip().startswith(("param", "require"))
           for line in text.splitlines()):
        if args.n is None or args.N is None:
            raise UsageError("template files need --n and --N")
        return template_instantiate(template_parse(text), args.n, args.N)
    return dsl_compile(dsl_parse(text), _parse_bindings(args.bind))


def _load_diagram(args) -> PDCode:
    path = args.input
    kind = _detect_format(path, args.input_format)
    text = _read(path)
    if kind == "pd":
        return parse_pd(text)
    if kind == "dt":
        return dt_realize_knot(dt_parse(text))
    if kind == "tangle":
        return _load_tangle(text, args)
    raise UsageError(f"{kind} input does not describe a planar diagram")


def _open_cache(args):
    if not args.cache:
        return MemoCache()
    if os.path.exists(args.cache):
        try:
            return MemoCache.load(args.cache, verify=args.verify_cache)
        except ValueError as exc:
            raise UsageError(f"cache {args.cache}: {exc}") from None
    return MemoCache()


def _close_cache(args, cache):
    if args.cache:
        cache.save(args.cache)


def cmd_homfly(args, out):
    d = _load_diagram(args)
    cache = _open_cache(args)
    P = homfly(d, cache)
    _close_cache(args, cache)
    print(P, file=out)
    return EXIT_OK


def cmd_specialize(args, out):
    d = _load_diagram(args)
    cache = _open_cache(args)
    f = homfly(d, cache).specialize_z()
    _close_cache(args, cache)
    print(f, file=out)
    return EXIT_OK


def cmd_obstruct(args, out):
    report = ObstructionReport()
    if args.input is not None:
        d = _load_diagram(args)
        cache = _open_cache(args)
        report = obstruct_kkbar(d, cache)
        _close_cache(args, cache)
    elif args.tb_witness is None and not args.torus:
        raise UsageError("obstruct needs an input file, --torus or --tb-witness")
    if args.tb_witness is not None:
        report = report + obstruct_chantraine(args.tb_witness)
    if args.torus:
        report = report + obstruct_generalized_square(*args.torus)
    print(report, file=out)
    if args.strict and report.inapplicable_only:
        return EXIT_INAPPLICABLE
    return EXIT_OK


def cmd_front_invariants(args, out):
    kind = _detect_format(args.input, args.input_format)
    if kind != "front":
        raise UsageError("front-invariants needs a .front file")
    inv = front_invariants(front_parse(_read(args.input)))
    if args.format == "csv":
        print("tb,rot,sl_plus", file=out)
        print(f"{inv.tb},{inv.rot},{inv.sl_plus}", file=out)
    else:
        print(inv.format(args.sl_convention), file=out)
    return EXIT_OK


def cmd_dt_validate(args, out):
    code = dt_parse(_read(args.input))
    problems = dt_validate(code)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_INPUT
    sizes = ",".join(map(str, code.component_sizes))
    print(f"ok :: crossings={code.crossings}, components={len(code.tuples)}, sizes=({sizes})",
          file=out)
    return EXIT_OK


def cmd_dt_realize(args, out):
    d = dt_realize_knot(dt_parse(_read(args.input)))
    out.write(format_pd(d))
    return EXIT_OK


def cmd_compile_tangle(args, out):
    d = _load_tangle(_read(args.input), args)
    out.write(format_pd(d))
    return EXIT_OK


def cmd_family_volumes(args, out):
    if args.N is None or args.N < 1:
        raise UsageError("--N must be a positive integer")
    if not args.vol_m > 0:
        raise UsageError("--vol-m must be positive")
    table = distinct_corrections(args.N)
    if args.format in (None, "csv"):
        out.write(table.to_csv(args.vol_m))
    else:
        for row in table.rows:
            est = vol_estimate(args.vol_m, row.n, args.N)
            print(f"n={row.n} slopes=({row.slope_b}, {row.slope_r}) "
                  f"correction={row.correction} estimate={est:.12f}", file=out)
        print(f"distinct={str(table.distinct).lower()}", file=out)
    return EXIT_OK if table.distinct else EXIT_NOT_DISTINCT


def cmd_monotonicity_check(args, out):
    if not args.C > 2 or args.grid_points < 1000:
        raise UsageError("need --C > 2 and --grid-points >= 1000")
    result = monotonicity_check(args.C, args.grid_points)
    if result.ok:
        print(f"ok :: C={args.C}, grid_points={args.grid_points}", file=out)
        return EXIT_OK
    print(f"counterexample :: {result.counterexample}", file=out)
    return 1


# Accept --format both before and after the subcommand.
_COMMON = argparse.ArgumentParser(add_help=False)
_COMMON.add_argument("--format", choices=("text", "csv"), default=argparse.SUPPRESS)


def _diagram_parser(sub, name, help_text, cache=True):
    p = sub.add_parser(name, help=help_text, parents=[_COMMON])
    p.add_argument("input", nargs="?" if name == "obstruct" else None,
                   help="input file (.pd, .dt, .tangle), or - for stdin")
    p.add_argument("--input-format", choices=("pd", "dt", "tangle", "front"))
    p.add_argument("--bind", action="append", metavar="NAME=INT",
                   help="bind a tangle parameter")
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    if cache:
        p.add_argument("--cache", metavar="PATH", help="persistent memo cache file")
        p.add_argument("--verify-cache", action="store_true",
                       help="recompute every loaded cache record")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagknot", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "csv"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = _diagram_parser(sub, "homfly", "print the HOMFLYPT polynomial")
    p.set_defaults(func=cmd_homfly)
    p = _diagram_parser(sub, "specialize", "print P(v, v^-1 - v)")
    p.set_defaults(func=cmd_specialize)

    p = _diagram_parser(sub, "obstruct", "sliceness obstructions for K # mirror(K)")
    p.add_argument("--torus", nargs=2, type=int, metavar=("P", "Q"))
    p.add_argument("--tb-witness", type=int, metavar="T")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when every verdict is inapplicable")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("front-invariants", help="tb, rot and sl of a front", parents=[_COMMON])
    p.add_argument("input")
    p.add_argument("--input-format", choices=("front",))
    p.add_argument("--sl-convention", choices=("plus", "minus"), default="plus",
                   help="report sl as tb+rot (default) or tb-rot")
    p.set_defaults(func=cmd_front_invariants)

    p = sub.add_parser("dt-validate", help="validate a DT code", parents=[_COMMON])
    p.add_argument("input")
    p.set_defaults(func=cmd_dt_validate)
    p = sub.add_parser("dt-realize", help="realize a knot DT code as PD text", parents=[_COMMON])
    p.add_argument("input")
    p.set_defaults(func=cmd_dt_realize)

    p = _diagram_parser(sub, "compile-tangle", "compile a tangle program to PD text",
                        cache=False)
    p.set_defaults(func=cmd_compile_tangle)

    p = sub.add_parser("family-volumes", help="correction table for K(n, N), n = 1..N", parents=[_COMMON])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--vol-m", type=float, default=DEFAULT_VOL_M)
    p.set_defaults(func=cmd_family_volumes)

    p = sub.add_parser("monotonicity-check", help="grid check that the correction profile is monotone", parents=[_COMMON])
    p.add_argument("--C", type=float, required=True)
    p.add_argument("--grid-points", type=int, default=100_000)
    p.set_defaults(func=cmd_monotonicity_check)
    return parser


def _config(args) -> RunConfig:
    inputs = [args.input] if getattr(args, "input", None) else []
    return RunConfig(args.command, inputs, getattr(args, "cache", None), args.format or "text",
                     getattr(args, "vol_m", None), getattr(args, "verify_cache", False))


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.config = _config(args)
    try:
        return args.func(args, out)
    except (KnotError, UsageError) as exc:
        print(f"lagknot {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

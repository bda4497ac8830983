"""The ``bendbreak`` command line.

Every command prints one table, CSV by default.  Classes are spread over
columns b, a1, ..., ar and counts are decimal strings, so no field needs
quoting.  Exit status 0 on success, 2 for usage errors and 3 when a
computation fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import cross_ratio, genus2, lattice, plane_counts
from .engine import CountCache
from .errors import BendBreakError, ComputationError, UsageError

EXIT_OK, EXIT_USAGE, EXIT_COMPUTATION = 0, 2, 3


@dataclass
class OutputTable:
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)

    def add(self, *values) -> None:
        row = ["" if v is None else str(v) for v in values]
        if len(row) != len(self.columns):
            raise ValueError("row width does not match the header")
        self.rows.append(row)

    def to_csv(self) -> str:
        lines = [",".join(self.columns)] + [",".join(r) for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([dict(zip(self.columns, r)) for r in self.rows], indent=1) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_seeds(path: str) -> plane_counts.SeedTable:
    return plane_counts.SeedTable.load(path)


def load_cache(path: str) -> CountCache:
    return CountCache.load(path)


def save_cache(path: str, cache: CountCache) -> None:
    cache.save(path)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _points(text: str) -> int:
    v = _nonnegative(text)
    if v > lattice.MAX_POINTS:
        raise argparse.ArgumentTypeError(f"r must be at most {lattice.MAX_POINTS}, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cache", metavar="PATH")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = _Parser(prog="bendbreak", description="Exact enumerative curve counts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, text in (("nd", "rational plane curves through 3d - 1 points"),
                       ("cd", "node on a fixed line"),
                       ("bd", "tangent to a fixed line"),
                       ("ndg1", "fixed general genus-one modulus")):
        add(name, text).add_argument("--max", type=_positive, required=True)

    p = add("delpezzo", "rational curves in a class on a del Pezzo surface")
    p.add_argument("--r", type=_points, required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--seeds", metavar="PATH")

    p = add("bdeg", "tangent to a fixed curve of degree e and genus g")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--e", type=_positive, required=True)
    p.add_argument("--g", type=_nonnegative, required=True)

    add("genus2", "fixed general genus-two modulus").add_argument("--d", type=_positive, required=True)

    p = add("crossratio", "four marked points of fixed cross-ratio")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--pattern", required=True,
                   choices=cross_ratio.FIXED_PATTERNS + cross_ratio.DUAL_PATTERNS)
    p.add_argument("--e2", type=_positive)

    add("lines", "line classes").add_argument("--r", type=_points, required=True)

    p = add("propa", "certificate for the positivity inequality")
    p.add_argument("--r", type=_points, required=True)
    p.add_argument("--class", dest="cls", required=True)
    return parser


def _class_columns(r: int) -> list[str]:
    return ["b"] + [f"a{i}" for i in range(1, r + 1)]


def _degree_table(fn, top: int, cache: CountCache) -> OutputTable:
    t = OutputTable(["d", "count"])
    for d in range(1, top + 1):
        t.add(d, fn(d, cache))
    return t


def _crossratio(args, cache: CountCache) -> OutputTable:
    t = OutputTable(["d", "e2", "count"])
    pat = args.pattern
    if pat in cross_ratio.FIXED_PATTERNS:
        if args.e2 is not None:
            raise UsageError(f"--e2 does not apply to the fixed-side pattern {pat}")
        t.add(args.d, None, cross_ratio.basic_fixed(args.d, pat, cache))
        return t
    if pat == "1,1>(e2)":
        if args.e2 is None:
            raise UsageError("pattern 1,1>(e2) needs --e2")
        t.add(args.d, args.e2, cross_ratio.dual_recursive(args.d, args.e2, cache))
        return t
    if args.e2 not in (None, 1):
        raise UsageError(f"pattern {pat} fixes e2 = 1")
    value = (cross_ratio.dual_recursive(args.d, 1, cache) if pat == "1,1>(1)"
             else cross_ratio.dual_pair(args.d, 1, cache))
    t.add(args.d, 1, value)
    return t


def run_command(args, cache: CountCache, err) -> OutputTable:
    cmd = args.command
    if cmd == "nd":
        return _degree_table(plane_counts.n_d, args.max, cache)
    if cmd == "cd":
        return _degree_table(plane_counts.c_d, args.max, cache)
    if cmd == "bd":
        return _degree_table(plane_counts.b_d, args.max, cache)
    if cmd == "ndg1":
        return _degree_table(plane_counts.n_d_genus1, args.max, cache)
    if cmd == "bdeg":
        t = OutputTable(["d", "e", "g", "count"])
        t.add(args.d, args.e, args.g, plane_counts.b_deg(args.d, args.e, args.g, cache))
        return t
    if cmd == "genus2":
        t = OutputTable(["d", "count"])
        t.add(args.d, genus2.n_d_genus2(args.d, cache))
        return t
    if cmd == "crossratio":
        return _crossratio(args, cache)
    model = lattice.SurfaceModel(args.r)
    if cmd == "lines":
        t = OutputTable(_class_columns(args.r))
        for line in lattice.enumerate_lines(model):
            t.add(line.b, *line.a)
        return t
    c = lattice.parse_class(args.cls, model)
    if cmd == "delpezzo":
        seeds = plane_counts.DEFAULT_SEEDS
        if args.seeds:
            seeds = load_seeds(args.seeds)
            for r, cls, old, new in seeds.overridden_defaults():
                print(f"bendbreak: seed override r={r} class {cls}: default {old} replaced by {new}",
                      file=err)
        s = lattice.normalize_sorted(c)
        t = OutputTable(["r"] + _class_columns(args.r) + ["count"])
        t.add(args.r, s.b, *s.a, plane_counts.del_pezzo_count(c, seeds, cache))
        return t
    # propa
    cert = lattice.proposition_a_check(c)
    t = OutputTable(["r"] + _class_columns(args.r)
                    + ["switches", "n_value", "threshold", "verdict", "special"])
    t.add(args.r, c.b, *c.a, len(cert.switches), cert.n_value, cert.threshold,
          str(cert.verdict).lower(), cert.special or "")
    return t


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        cache = load_cache(args.cache) if args.cache else CountCache()
        table = run_command(args, cache, err)
        if args.cache:
            save_cache(args.cache, cache)
    except UsageError as exc:
        print(f"bendbreak: usage error: {exc}", file=err)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"bendbreak: computation error: {exc}", file=err)
        return EXIT_COMPUTATION
    except BendBreakError as exc:  # pragma: no cover - every error is one of the two
        print(f"bendbreak: error: {exc}", file=err)
        return EXIT_COMPUTATION
    except OSError as exc:
        print(f"bendbreak: usage error: {exc}", file=err)
        return EXIT_USAGE
    out.write(table.render(args.format))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

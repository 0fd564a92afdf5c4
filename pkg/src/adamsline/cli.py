"""Command line front end: ``adamsline <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import assembly, modules, plotting, splitrange
from .lines import VanishingLine, line_region, verify_chart
from .resolution import ext_chart, minimal_resolution

FORMATS = """\
formats:
  chart TSV        header "s<TAB>t<TAB>dim", one row per nonzero Ext^{s,t},
                   sorted by stem t-s then s
  violations TSV   header "s<TAB>t<TAB>stem<TAB>dim"
  splitrange TSV   header "n ell k binding table1 match closed_form" (tab separated);
                   --reconcile adds a variant column and '#' summary lines
  module file      'gen <label> <degree>' lines, then
                   'sq <i> <label> = <label>+<label>+...' lines ('0' allowed);
                   unlisted squares are zero, '#' starts a comment
  stem data        'stem <i> = <term>+<term>...' with terms Z/<m>; '#' comments
module selectors:
  sphere | sphere:<m> | stunted:<N> | y-module:<n> | file:<path> | <path>
"""


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    s_max: int = 0
    t_max: int = 0
    selector: Optional[str] = None
    outputs: dict[str, Optional[str]] = field(default_factory=dict)
    variant: Optional[str] = None

    def __post_init__(self) -> None:
        if self.subcommand in ("resolve", "vanishing"):
            if self.s_max < 1 or self.t_max < 1:
                raise UsageError("window must be positive: --smax and --tmax >= 1")
            if not self.selector:
                raise UsageError("exactly one --module selector is required")


def build_module(selector: str, t_max: int, y_model: str = modules.STUNTED_BELOW) -> modules.GradedModule:
    kind, _, arg = selector.partition(":")
    try:
        if kind == "sphere":
            return modules.sphere(int(arg) if arg else 0, t_max)
        if kind == "stunted":
            N = int(arg)
            if N > t_max:
                raise UsageError(f"stunted:{N} needs --tmax >= {N}")
            return modules.stunted_projective(N, t_max)
        if kind == "y-module":
            n = int(arg)
            if n < 1:
                raise UsageError("y-module needs n >= 1")
            return modules.y_module(n, t_max, y_model)
    except ValueError as exc:
        raise UsageError(f"bad module selector {selector!r}: {exc}") from None
    path = Path(arg if kind == "file" else selector)
    if not path.is_file():
        raise UsageError(f"unknown module selector or missing file: {selector!r}")
    try:
        return modules.parse_module(path.read_text(encoding="utf-8"), name=path.stem)
    except modules.ModuleFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.flush()
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.buffer.flush()


def _chart(args, model=modules.STUNTED_BELOW):
    cfg = RunConfig(args.command, args.smax, args.tmax, args.module, {"out": args.out, "svg": args.svg})
    M = build_module(cfg.selector, cfg.t_max, model)
    R = minimal_resolution(M, cfg.s_max, cfg.t_max, threads=args.threads)
    return M, ext_chart(R)


def cmd_resolve(args) -> int:
    _, chart = _chart(args)
    _emit(chart.to_tsv(), args.out)
    if args.svg:
        plotting.save_chart(chart, args.svg)
    return 0


def cmd_vanishing(args) -> int:
    M, chart = _chart(args, args.y_model)
    bottom = M.bottom
    if bottom is None:
        raise UsageError("module is zero in the window")
    intercept = bottom - 3 if args.intercept is None else args.intercept
    line = VanishingLine.from_intercept(args.m, intercept)
    report = verify_chart(chart, line_region(line), args.exception)
    _emit(report.to_tsv(), args.out)
    if args.svg:
        plotting.save_chart(chart, args.svg, line=line, exceptions=report.exceptions,
                            violations=report.violations)
    status = "pass" if report.ok else f"FAIL ({len(report.violations)} violations)"
    print(f"# {chart.name}: 1/{line.m} line, intercept {line.intercept}, "
          f"window s<={report.window[0]} t<={report.window[1]}: {status}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_splitrange(args) -> int:
    try:
        v = splitrange.ConstraintVariant.parse(args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    if args.reconcile:
        text = splitrange.reconcile_tsv(splitrange.reconcile_table(splitrange.VARIANT_GRID, args.n_max))
    else:
        text = splitrange.splitrange_tsv(args.n_max, v)
    _emit(text, args.out)
    if args.figure:
        ns = list(range(args.n_max + 1))
        ref = [splitrange.TABLE1_REFERENCE[n] if n < len(splitrange.TABLE1_REFERENCE) else None for n in ns]
        plotting.save_splitrange(
            args.figure, ns, [splitrange.optimize(n, v).ell for n in ns],
            [splitrange.closed_form(n) for n in ns], ref, v.label,
        )
    return 0


def cmd_assemble(args) -> int:
    try:
        data = assembly.load_stem_data(args.stems or assembly.reference_stems_path())
        result = assembly.assemble_H2(args.n, args.g, data)
    except (assembly.PreconditionError, assembly.StemDataError, OSError) as exc:
        raise UsageError(str(exc)) from None
    _emit(result.report(), args.out)
    if args.check and result.agrees is False:
        return 1
    return 0


def cmd_dump_module(args) -> int:
    if args.tmax < 0:
        raise UsageError("--tmax must be non-negative")
    M = build_module(args.module, args.tmax, args.y_model)
    _emit(modules.dump_module(M), args.out)
    return 0


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="adamsline",
        description="Adams E2 charts, vanishing lines, splitting ranges and H2 assembly.",
        epilog=FORMATS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def window(sp):
        sp.add_argument("--module", required=True, help="module selector, see 'formats'")
        sp.add_argument("--smax", type=int, required=True)
        sp.add_argument("--tmax", type=int, required=True)
        sp.add_argument("--threads", type=_positive, default=1, help="worker cap inside the resolver")
        sp.add_argument("--out", help="TSV output path (default stdout)")
        sp.add_argument("--svg", help="also render the chart to this file")

    def sub_parser(name, helptext):
        return sub.add_parser(name, help=helptext, epilog=FORMATS,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    sp = sub_parser("resolve", "minimal resolution, Ext chart TSV")
    window(sp)
    sp.set_defaults(func=cmd_resolve)

    sp = sub_parser("vanishing", "check a vanishing line on a chart")
    window(sp)
    sp.add_argument("--m", type=_positive, default=2, help="line is m*s > (t-s) + c; slope 1/m (default 2)")
    sp.add_argument("--intercept", type=int, help="x-intercept; default bottom degree - 3")
    sp.add_argument("--exception", type=int, action="append", default=[], metavar="STEM",
                    help="exempt a stem column (repeatable)")
    sp.add_argument("--y-model", choices=(modules.STUNTED_BELOW, modules.BOCKSTEIN_ONLY),
                    default=modules.STUNTED_BELOW, help="higher squares on the bottom class of y-module")
    sp.set_defaults(func=cmd_vanishing)

    sp = sub_parser("splitrange", "splitting-range optimizer TSV")
    sp.add_argument("--n-max", type=int, default=15)
    sp.add_argument("--variant", default="star=n-k+1,ddag=-4", help="star=<n-k|n-k+1>,ddag=<-4|-5|-6>")
    sp.add_argument("--reconcile", action="store_true", help="run the full variant grid against the reference table")
    sp.add_argument("--out")
    sp.add_argument("--figure", help="plot the optimum against the closed form")
    sp.set_defaults(func=cmd_splitrange)

    sp = sub_parser("assemble", "degree-2 homology assembly")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--stems", help="stem data file (default: the shipped reference.stems)")
    sp.add_argument("--check", action="store_true", help="exit 1 when the formula disagrees with the reference")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_assemble)

    sp = sub_parser("dump-module", "print a module in the text format")
    sp.add_argument("--module", required=True)
    sp.add_argument("--tmax", type=int, required=True)
    sp.add_argument("--y-model", choices=(modules.STUNTED_BELOW, modules.BOCKSTEIN_ONLY),
                    default=modules.STUNTED_BELOW)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dump_module)

    sp = sub_parser("formats", "describe the input and output formats")
    sp.set_defaults(func=lambda args: (_emit(FORMATS, None), 0)[1])
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"adamsline {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 on success,
1 on domain errors, 2 on usage or parse errors.  Output is byte-stable
across runs (canonical monomial ordering, exact rationals), so it is safe
to pin in golden-file tests.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formulas
from .errors import KernelError
from .gradedring import load_presentation
from .parsing import ParseError
from .pipeline import PRESET_NAMES, consistency_report, count_maximal_subbundles, load_preset


def _load_ring_file(path: str):
    text = Path(path).read_text()
    return load_presentation(text, name=Path(path).stem)


def _cmd_count(args) -> int:
    preset = load_preset(args.preset, genus=args.genus)
    result = count_maximal_subbundles(preset)
    if args.format == "record":
        print(result.to_json())
    else:
        print(result.summary(verbose=args.verbose))
    return 0


def _cmd_reduce(args) -> int:
    ring = _load_ring_file(args.ring)
    print(ring.parse(args.expression))
    return 0


def _cmd_integrate(args) -> int:
    ring = _load_ring_file(args.ring)
    print(ring.parse(args.expression).integrate())
    return 0


def _cmd_check(args) -> int:
    preset = load_preset(args.preset, genus=args.genus)
    failures = 0
    for name, ok, detail in consistency_report(preset):
        status = "ok" if ok else "FAIL"
        print(f"{status}: {name} ({detail})")
        failures += not ok
    if failures:
        print(f"error: {failures} check(s) failed for preset {preset.name}", file=sys.stderr)
        return 1
    return 0


def _cmd_formulas(args) -> int:
    if args.formula == "s-invariant":
        print(formulas.s_invariant(args.n, args.d, args.n_sub, args.d_sub))
    elif args.formula == "hirschowitz-smax":
        print(formulas.hirschowitz_smax(args.n, args.n_sub, args.d, args.g))
    elif args.formula == "stratum-dim":
        print(formulas.stratum_dim(args.n, args.n_sub, args.d, args.g, args.s))
    elif args.formula == "quot-dim":
        print(formulas.quot_dim(args.sub_rank, args.sub_deg, args.rank, args.deg, args.g))
    elif args.formula == "m1":
        print(formulas.m1_closed(args.n, args.g))
    elif args.formula == "m2":
        print(formulas.m2_closed(args.n))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxsub",
        description="count maximal subbundles of general bundles on curves, exactly",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="run a counting preset end to end")
    count.add_argument("--preset", required=True, choices=PRESET_NAMES)
    count.add_argument("--genus", type=int, default=None, help="genus for the jacobian preset (default 2)")
    count.add_argument("--verbose", action="store_true", help="print the intermediate characters")
    count.add_argument("--format", choices=("text", "record"), default="text")
    count.set_defaults(handler=_cmd_count)

    reduce_cmd = sub.add_parser("reduce", help="normal form of an expression in a presented ring")
    reduce_cmd.add_argument("--ring", required=True, help="presentation file")
    reduce_cmd.add_argument("expression")
    reduce_cmd.set_defaults(handler=_cmd_reduce)

    integrate = sub.add_parser("integrate", help="integrate an expression against the fundamental class")
    integrate.add_argument("--ring", required=True, help="presentation file")
    integrate.add_argument("expression")
    integrate.set_defaults(handler=_cmd_integrate)

    form = sub.add_parser("formulas", help="closed-form invariants")
    fsub = form.add_subparsers(dest="formula", required=True)

    s_inv = fsub.add_parser("s-invariant", help="n'd - nd'")
    s_inv.add_argument("--n", type=int, required=True)
    s_inv.add_argument("--d", type=int, required=True)
    s_inv.add_argument("--n-sub", dest="n_sub", type=int, required=True)
    s_inv.add_argument("--d-sub", dest="d_sub", type=int, required=True)

    smax = fsub.add_parser("hirschowitz-smax", help="generic maximum of the minimal invariant")
    smax.add_argument("--n", type=int, required=True)
    smax.add_argument("--n-sub", dest="n_sub", type=int, required=True)
    smax.add_argument("--d", type=int, required=True)
    smax.add_argument("--g", type=int, required=True)

    sdim = fsub.add_parser("stratum-dim", help="dimension of the fixed-invariant stratum")
    sdim.add_argument("--n", type=int, required=True)
    sdim.add_argument("--n-sub", dest="n_sub", type=int, required=True)
    sdim.add_argument("--d", type=int, required=True)
    sdim.add_argument("--g", type=int, required=True)
    sdim.add_argument("--s", type=int, required=True)

    qdim = fsub.add_parser("quot-dim", help="expected dimension of a subsheaf space")
    qdim.add_argument("--sub-rank", dest="sub_rank", type=int, required=True)
    qdim.add_argument("--sub-deg", dest="sub_deg", type=int, required=True)
    qdim.add_argument("--rank", type=int, required=True)
    qdim.add_argument("--deg", type=int, required=True)
    qdim.add_argument("--g", type=int, required=True)

    m1 = fsub.add_parser("m1", help="count of maximal line subbundles, n^g")
    m1.add_argument("--n", type=int, required=True)
    m1.add_argument("--g", type=int, required=True)

    m2 = fsub.add_parser("m2", help="genus-2 count of maximal rank-2 subbundles")
    m2.add_argument("--n", type=int, required=True)

    form.set_defaults(handler=_cmd_formulas)

    check = sub.add_parser("check", help="run a preset's internal consistency suite")
    check.add_argument("--preset", required=True, choices=PRESET_NAMES)
    check.add_argument("--genus", type=int, default=None)
    check.set_defaults(handler=_cmd_check)

    return parser


def run(argv=None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KernelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

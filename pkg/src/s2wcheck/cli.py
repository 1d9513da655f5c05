"""Command-line entry point: ``s2wcheck <suite> [options]``.

Exit status is 0 when every case passes, 1 on any failure and 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from .elliptic import verify_elliptic
from .exact.gpoly import LAMBDA_QUINTIC
from .families import solve_relations, verify_ratio_formula
from .flag import flag_check
from .intersect import coefficient_a
from .p1series import verify_rational
from .report import Report
from .rng import DEFAULT_SEED

ELLIPTIC_GENERA = (3, 5, 7, 9)
DEFAULT_SWEEP = 21
MAX_SHOWN_FAILURES = 20


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed for all sampling")
    common.add_argument("--json", type=Path, metavar="PATH", help="write a JSON report here")
    common.add_argument("--no-timestamp", action="store_true", help="omit runtimes from the JSON report")
    common.add_argument("--samples", type=_nonneg, default=25, help="random pencil members per series")
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--sweep", type=int, metavar="MAX", help="largest genus for solve-relations")
    common.add_argument("--case", type=int, choices=(1, 2), help="flag-check scenario")

    p = argparse.ArgumentParser(prog="s2wcheck", description="Exact checks of ramification and divisor-class computations.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, help_ in (
        ("verify-rational", "vanishing sequences and weights of series on the projective line"),
        ("verify-elliptic", "weight bounds on elliptic curves and the torsion argument"),
        ("intersection", "the lambda coefficient of the S^2W class"),
        ("solve-relations", "boundary coefficient ratios from the test families"),
        ("flag-check", "node multiplicities of limit ramification on flag curves"),
        ("all", "every suite"),
    ):
        sub.add_parser(name, parents=[common], help=help_, description=help_)
    return p


# -- suites ---------------------------------------------------------------------


def run_intersection(args) -> tuple[Report, list[str]]:
    t0 = time.perf_counter()
    rep = Report("intersection", seed=args.seed)
    res = coefficient_a(with_trace=True)
    rep.check("quintic", {}, LAMBDA_QUINTIC, res.value, "lambda coefficient")
    rep.check("integral", {}, True, res.value.is_integral(), "integrality")
    genera = [args.g] if args.g is not None else [5]
    for g in genera:
        rep.check(f"value@g={g}", {"g": g}, LAMBDA_QUINTIC.eval(g), res.value.eval(g), "evaluation")
    lines = [f"a(g) = {res.value}"]
    lines += [f"a({g}) = {res.value.eval(g)}" for g in genera]
    lines.append("trace:")
    for t in res.trace:
        detail = t.get("image", t.get("value"))
        lines.append(f"  {t['monomial']:>12}  coeff {t['coefficient']}  [{t['rule']}]  -> {detail}")
    rep.runtime = time.perf_counter() - t0
    return rep, lines


def run_solve(args) -> tuple[Report, list[str]]:
    if args.g is not None:
        rep = verify_ratio_formula(args.g, g_min=args.g)
        sol = solve_relations(args.g)
        lines = [f"a{l}/a1 = {sol.ratio(l)}" for l in range(2, args.g // 2 + 1)]
    else:
        top = args.sweep if args.sweep is not None else DEFAULT_SWEEP
        rep = verify_ratio_formula(top)
        lines = []
        for g in range(5, top + 1):
            sol = solve_relations(g)
            lines.append(f"g={g}: " + ", ".join(f"a{l}/a1={sol.ratio(l)}" for l in range(2, g // 2 + 1)))
    rep.seed = args.seed
    return rep, lines


def run_rational(args) -> tuple[Report, list[str]]:
    return verify_rational(samples=args.samples, seed=args.seed), []


def run_elliptic(args) -> tuple[Report, list[str]]:
    genera = (args.g,) if args.g is not None else ELLIPTIC_GENERA
    return verify_elliptic(genera, samples=args.samples, seed=args.seed), []


def run_flag(args) -> tuple[Report, list[str]]:
    genera = (args.g,) if args.g is not None else ELLIPTIC_GENERA
    cases = (args.case,) if args.case is not None else (1, 2)
    rep = flag_check(genera, cases)
    rep.seed = args.seed
    return rep, list(rep.notes)


SUITES: dict[str, Callable] = {
    "intersection": run_intersection,
    "solve-relations": run_solve,
    "verify-rational": run_rational,
    "verify-elliptic": run_elliptic,
    "flag-check": run_flag,
}


def _validate(parser: argparse.ArgumentParser, args) -> None:
    cmd = args.command
    if args.g is not None:
        if cmd in ("verify-elliptic", "flag-check") and (args.g < 3 or args.g % 2 == 0):
            parser.error(f"{cmd} needs an odd genus >= 3")
        if cmd == "solve-relations" and args.g < 5:
            parser.error("solve-relations needs g >= 5")
        if cmd in ("verify-rational", "all"):
            parser.error(f"--g is not used by {cmd}")
    if args.sweep is not None:
        if cmd != "solve-relations":
            parser.error("--sweep applies to solve-relations only")
        if args.sweep < 5:
            parser.error("--sweep must be at least 5")
    if args.case is not None and cmd != "flag-check":
        parser.error("--case applies to flag-check only")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    t0 = time.perf_counter()
    if args.command == "all":
        rep = Report("all", seed=args.seed)
        lines = []
        for name, fn in SUITES.items():
            sub, _ = fn(args)
            rep.extend(sub, prefix=name)
            lines.append(sub.summary())
        rep.runtime = time.perf_counter() - t0
    else:
        rep, lines = SUITES[args.command](args)
        if rep.runtime is None:
            rep.runtime = time.perf_counter() - t0
    for line in lines:
        print(line)
    for note in rep.notes:
        if note not in lines:
            print(f"note: {note}")
    bad = rep.failures()
    for c in bad[:MAX_SHOWN_FAILURES]:
        print(f"FAIL {c.id}: expected {c.expected}, computed {c.computed} [{c.tag}]")
    if len(bad) > MAX_SHOWN_FAILURES:
        print(f"... {len(bad) - MAX_SHOWN_FAILURES} more failures")
    print(rep.summary())
    if args.json is not None:
        args.json.write_text(rep.to_json(include_runtime=not args.no_timestamp))
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

    fmp compute oy --index 1,1 --prime 7
    fmp compute zeta --index 1,1,1,2 --window 1 --prime 13
    fmp verify main-theorem --n 1..5 --primes 7..199 --workers 4
    fmp merge a.json b.json --out merged.json

Index syntax is comma-separated positive integers with a repetition
shorthand: "1^4" means 1,1,1,1 and "1^3,2" means 1,1,1,2.
"""

from __future__ import annotations

import argparse
import os
import sys

from .fmp import DEFAULT_ORACLE_BUDGET, Index, oy_fmp, zeta_variant
from .modular import bernoulli_mod, is_prime
from .ss import ss_star
from .sweep import (
    ConflictError,
    IDENTITY_IDS,
    RunConfig,
    SweepReport,
    default_floor,
    default_jobs,
    merge_reports,
    run_sweep,
)

_N_IDENTITIES = ("shuffle-lemma", "recurrence", "main-theorem", "functional-eq")


def parse_index(text: str) -> Index:
    parts: list[int] = []
    try:
        for atom in text.split(","):
            if "^" in atom:
                base, _, count = atom.partition("^")
                parts.extend([int(base)] * int(count))
            else:
                parts.append(int(atom))
        return Index(tuple(parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index {text!r}: {exc}") from None


def parse_prime_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime range {text!r}; expected LO..HI")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty prime range {text!r}")
    return lo, hi


def parse_n_values(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = tuple(range(int(lo), int(hi) + 1))
        else:
            values = (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n specification {text!r}")
    if not values or any(n < 1 for n in values):
        raise argparse.ArgumentTypeError(f"n must be positive: {text!r}")
    return values


def _check_supported_prime(p: int):
    if not is_prime(p) or p < 5:
        raise SystemExit(f"error: p={p} out of supported range (primes >= 5)")


def _cmd_compute(args) -> int:
    _check_supported_prime(args.prime)
    p = args.prime
    if args.kind in ("oy", "ss", "zeta") and args.index is None:
        raise SystemExit(f"error: compute {args.kind} requires --index")
    if args.kind == "oy":
        value = str(oy_fmp(args.index, p))
    elif args.kind == "ss":
        if args.slot is None:
            raise SystemExit("error: compute ss requires --slot")
        value = str(ss_star(args.index, args.slot, p))
    elif args.kind == "zeta":
        value = str(zeta_variant(args.index, args.window, p))
    else:  # bernoulli
        if args.m is None:
            raise SystemExit("error: compute bernoulli requires --m")
        value = str(bernoulli_mod(args.m, p))
    print(value)
    return 0


def _resolve_budget(cli_value: int | None) -> int:
    if cli_value is not None:
        return cli_value
    env = os.environ.get("FMP_ORACLE_BUDGET")
    return int(env) if env else DEFAULT_ORACLE_BUDGET


def _cmd_verify(args) -> int:
    lo, hi = args.primes
    if args.n is not None and args.identity not in _N_IDENTITIES:
        raise SystemExit(f"error: identity {args.identity} takes no --n parameter")
    if args.n is not None:
        jobs = [(args.identity, {"n": n}) for n in args.n]
    else:
        jobs = default_jobs(args.identity)
    floors = {args.identity: args.floor} if args.floor is not None else {}
    config = RunConfig(
        lo=lo,
        hi=hi,
        identities=(args.identity,),
        floors=floors,
        budget=_resolve_budget(args.budget),
        workers=args.workers,
        fmt=args.format,
    )
    job_floors = [
        floors.get(ident, default_floor(ident, params)) for ident, params in jobs
    ]
    if all(hi < floor for floor in job_floors):
        raise SystemExit(
            f"error: range {lo}..{hi} lies below the identity floor "
            f"{min(job_floors)}; nothing to verify"
        )
    report = run_sweep(config, jobs)
    rendered = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        print(report.to_text(), end="")
    else:
        print(rendered, end="")
    return 0 if report.ok else 1


def _cmd_merge(args) -> int:
    reports = []
    for path in args.reports:
        with open(path, encoding="utf-8") as fh:
            reports.append(SweepReport.from_json(fh.read()))
    try:
        merged = merge_reports(reports)
    except ConflictError as exc:
        raise SystemExit(f"error: {exc}")
    rendered = merged.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        print(merged.to_text(), end="")
    else:
        print(rendered, end="")
    return 0 if merged.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmp",
        description="Exact finite-polylog computation and prime-by-prime identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="compute one value at one prime")
    comp.add_argument("kind", choices=("oy", "ss", "zeta", "bernoulli"))
    comp.add_argument("--index", type=parse_index, help="index, e.g. 1,2 or 1^4")
    comp.add_argument("--prime", type=int, required=True)
    comp.add_argument("--slot", type=int, help="indeterminate slot (ss only)")
    comp.add_argument("--window", type=int, default=1, help="window i (zeta only)")
    comp.add_argument("--m", type=int, help="Bernoulli index (bernoulli only)")
    comp.set_defaults(fn=_cmd_compute)

    ver = sub.add_parser("verify", help="sweep an identity over a prime range")
    ver.add_argument("identity", choices=IDENTITY_IDS)
    ver.add_argument("--primes", type=parse_prime_range, required=True, metavar="LO..HI")
    ver.add_argument("--n", type=parse_n_values, help="depth parameter, e.g. 3 or 1..5")
    ver.add_argument("--floor", type=int, help="override the identity's prime floor")
    ver.add_argument("--budget", type=int, help="naive-oracle tuple budget")
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--format", choices=("json", "csv", "text"), default="json")
    ver.add_argument("--out", help="write the report to this file")
    ver.set_defaults(fn=_cmd_verify)

    mer = sub.add_parser("merge", help="merge sweep reports over prime ranges")
    mer.add_argument("reports", nargs="+", help="JSON report files")
    mer.add_argument("--format", choices=("json", "csv", "text"), default="json")
    mer.add_argument("--out", help="write the merged report to this file")
    mer.set_defaults(fn=_cmd_merge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compute":
        for name, needed in (("index", ("oy", "ss", "zeta")),):
            if args.kind in needed and getattr(args, name) is None:
                raise SystemExit(f"error: compute {args.kind} requires --{name}")
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        raise SystemExit(f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    labelsem eval    --label L.json --hedge '"quite"' --x 6.5
    labelsem curve   --label L.json --hedge '"very"' --range 1 9 --steps 161 --out c.csv
    labelsem verify  dilate --samples 1000000 --seed 0
    labelsem limit   dilate --m0 0.5 --tol 1e-6
    labelsem compose concentrate --m0 0.5 --n 2

Exit codes: 0 success, 1 validation error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import hedge, jsonspec, verify
from .hedge import ConvergenceError, apply_chain
from .jsonspec import SpecError
from .oracle import OracleConfig

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2


def _read_json_arg(value: str):
    if value == "-":
        return jsonspec.loads(sys.stdin.read())
    if os.path.exists(value):
        with open(value) as fh:
            return jsonspec.loads(fh.read())
    return jsonspec.loads(value)


def _load_label(args):
    if args.label is None:
        raise SpecError("--label is required")
    return jsonspec.label_from_json(_read_json_arg(args.label))


def _load_chain(args) -> list:
    chain = []
    for h in args.hedge or []:
        chain.extend(jsonspec.hedges_from_json(_read_json_arg(h)))
    return chain


def curve_table(L, chain, lo: float, hi: float, steps: int) -> dict:
    """Columns x, mu_base, then one per chain prefix; the full chain is mu_hedged."""
    if not lo < hi:
        raise SpecError("curve range needs lo < hi")
    if steps < 2:
        raise SpecError("curve needs at least 2 steps")
    if L.dim != 1:
        raise SpecError("curves are only drawn for 1-D labels")
    xs = np.linspace(lo, hi, steps)
    cols = {"x": [float(x) for x in xs], "mu_base": [float(L(x)) for x in xs]}
    for i in range(1, len(chain) + 1):
        hl = apply_chain(chain[:i], L)
        name = "mu_hedged" if i == len(chain) else f"mu_hedged_{i}"
        cols[name] = [float(hl(x)) for x in xs]
    return cols


def write_table(cols: dict, path: str, fmt: str):
    with open(path, "w", newline="") as fh:
        if fmt == "json":
            json.dump(cols, fh)
            return
        w = csv.writer(fh)
        names = list(cols)
        w.writerow(names)
        for row in zip(*(cols[n] for n in names)):
            w.writerow([repr(v) for v in row])


def cmd_eval(args) -> int:
    L = _load_label(args)
    hl = apply_chain(_load_chain(args), L)
    print(f"{hl(args.x if len(args.x) > 1 else args.x[0]):.6f}")
    return EXIT_OK


def cmd_curve(args) -> int:
    L = _load_label(args)
    cols = curve_table(L, _load_chain(args), args.range[0], args.range[1], args.steps)
    if args.out is None:
        raise SpecError("--out is required")
    try:
        write_table(cols, args.out, args.format)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = OracleConfig(samples=args.samples, seed=args.seed)
    checks = verify.run(args.scope, cfg, b=args.b, k=args.k)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_limit(args) -> int:
    limit = hedge.limit_profile(args.kind, args.m0)
    try:
        _, steps = hedge.iterate_to_limit(args.kind, args.m0, args.tol, args.max_iter)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"{limit:g} ({steps} steps)")
    return EXIT_OK


def cmd_compose(args) -> int:
    if args.m0 is not None:
        m0 = args.m0
    else:
        if args.x is None:
            raise SpecError("compose needs --m0, or --label with --x")
        m0 = _load_label(args)(args.x if len(args.x) > 1 else args.x[0])
    print(f"{hedge.compose_n(args.kind, m0, args.n):.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="labelsem", description="Label-semantics hedges: evaluate, plot, verify.")
    sub = p.add_subparsers(dest="command", required=True)

    def label_flags(sp):
        sp.add_argument("--label", help="label JSON: file path, inline JSON, or - for stdin")
        sp.add_argument("--hedge", action="append", help="hedge JSON (repeatable, applied in order)")

    sp = sub.add_parser("eval", help="print the (hedged) appropriateness at a point")
    label_flags(sp)
    sp.add_argument("--x", type=float, nargs="+", required=True)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("curve", help="write a membership curve as CSV or JSON")
    label_flags(sp)
    sp.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"), required=True)
    sp.add_argument("--steps", type=int, default=161)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("verify", help="run an oracle suite")
    sp.add_argument("scope", choices=verify.SCOPES + ("all",))
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--b", type=float, default=3.0, help="uniform upper bound for the power suite")
    sp.add_argument("--k", type=float, help="single exponent for the power suite")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("limit", help="limit of repeated hedging and steps to reach it")
    sp.add_argument("kind", choices=("dilate", "concentrate"))
    sp.add_argument("--m0", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--max-iter", type=int, default=10_000)
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("compose", help="apply a hedge n times to an appropriateness value")
    sp.add_argument("kind", choices=("dilate", "concentrate"))
    sp.add_argument("--m0", type=float)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--label")
    sp.add_argument("--x", type=float, nargs="+")
    sp.set_defaults(func=cmd_compose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point (``cyclogap`` / ``python -m cyclogap``)."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .bounds import DEFAULT_MAX_K, EnumerationInfeasibleError, bounds_report, epsilon_bound
from .conjecture import scan_m_range
from .harness import (
    QUALITY_BOUND,
    delta_ratio_scan,
    quality_scan,
    write_delta_csv,
)
from .numtheory import FactorizationError, SearchCeilingError, factorize_odd_squarefree
from .polynomial import (
    CoefficientOverflowError,
    DegreeCeilingError,
    cyclotomic,
    inverse_cyclotomic,
    max_gap,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_RESOURCE = 4
EXIT_REFUTED = 5

_RESOURCE_ERRORS = (
    DegreeCeilingError,
    CoefficientOverflowError,
    EnumerationInfeasibleError,
    SearchCeilingError,
)


def _poly(kind: str, n: int, ceiling: int | None):
    f = factorize_odd_squarefree(n)
    build = cyclotomic if kind == "phi" else inverse_cyclotomic
    return build(f, ceiling)


def _fmt(v) -> str:
    return "" if v is None else str(v)


def cmd_gap(args, out) -> int:
    rep = max_gap(_poly(args.kind, args.n, args.degree_ceiling))
    if args.json:
        out.write(json.dumps({"n": args.n, "kind": args.kind, "gap": rep.gap,
                              "witness": [rep.witness_low, rep.witness_high]}) + "\n")
    else:
        out.write(f"{rep.gap} ({rep.witness_low}, {rep.witness_high})\n")
    return EXIT_OK


def cmd_poly(args, out) -> int:
    terms = _poly(args.kind, args.n, args.degree_ceiling).terms()
    if args.json:
        out.write(json.dumps([[e, c] for e, c in terms]) + "\n")
    else:
        out.write(" ".join(f"{e}:{c}" for e, c in terms) + "\n")
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    rep = bounds_report(factorize_odd_squarefree(args.n), args.max_k)
    d = rep.as_dict()
    if args.json:
        out.write(json.dumps(d, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"n = {rep.n} = {'*'.join(map(str, rep.primes))}\n")
    out.write(f"g(Phi)  {rep.g_phi}\n")
    for name in ("alpha_p", "beta_p", "gamma_p", "eps_p"):
        mark = " *" if rep.exact.get(name) else ""
        out.write(f"  {name:<8}{_fmt(d[name])}{mark}\n")
    out.write(f"g(Psi)  {rep.g_psi}\n")
    for name in ("alpha_m", "beta_m", "gamma_m", "delta_m", "eps_m"):
        mark = " *" if rep.exact.get(name) else ""
        out.write(f"  {name:<8}{_fmt(d[name])}{mark}\n")
    return EXIT_OK


def cmd_epsilon(args, out) -> int:
    res = epsilon_bound(factorize_odd_squarefree(args.n), args.sign, args.max_k)
    part = res.argmax
    d = {"n": args.n, "sign": args.sign, "value": res.value,
         "admissible_pairs": res.admissible_pairs,
         "argmax": {"A": list(part.A), "B": list(part.B), "u": part.u, "l": part.l}}
    if args.json:
        out.write(json.dumps(d) + "\n")
    else:
        out.write(f"value {res.value}\nadmissible pairs {res.admissible_pairs}\n"
                  f"B = {list(part.B)}\nA = {list(part.A)}\nu = {part.u}, l = {part.l}\n")
    return EXIT_OK


def cmd_scan_quality(args, out) -> int:
    stats = quality_scan(args.bound, args.min_k, args.jobs, args.cache, args.out)
    out.write(json.dumps(stats.as_dict(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_scan_delta(args, out) -> int:
    stats = [delta_ratio_scan(args.k, args.p, b) for b in args.bound]
    text = write_delta_csv(stats, args.out)
    if args.out is None:
        out.write(text)
    else:
        for s in stats:
            out.write(json.dumps(s.as_dict()) + "\n")
    return EXIT_OK


def cmd_conjecture(args, out) -> int:
    t0 = time.perf_counter()
    verdicts = scan_m_range(args.m_max, args.jobs, args.degree_ceiling,
                            args.block_check_fraction)
    elapsed = time.perf_counter() - t0
    refuted = [v for v in verdicts if v.verdict == "refuted"]
    incomplete = [v for v in verdicts if v.verdict == "incomplete"]
    for v in refuted:
        ce = v.counterexample
        out.write(f"m={v.m} refuted: p={ce.p}, gap={ce.gap} ({ce.expected})\n")
    for v in incomplete:
        out.write(f"m={v.m} incomplete: {'; '.join(v.errors)}\n")
    if refuted:
        return EXIT_REFUTED
    if incomplete:
        return EXIT_RESOURCE
    out.write(f"all confirmed ({len(verdicts)} values of m below {args.m_max}, "
              f"{elapsed:.1f}s)\n")
    return EXIT_OK


def _bounds_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclogap", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("gap", cmd_gap), ("poly", cmd_poly)):
        p = sub.add_parser(name)
        p.add_argument("kind", choices=("phi", "psi"))
        p.add_argument("n", type=int)
        p.add_argument("--json", action="store_true")
        p.add_argument("--degree-ceiling", type=int, default=None)
        p.set_defaults(func=fn)

    p = sub.add_parser("bounds")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("epsilon")
    p.add_argument("n", type=int)
    p.add_argument("--sign", choices=("plus", "minus"), required=True)
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_epsilon)

    scan = sub.add_parser("scan").add_subparsers(dest="scan", required=True)
    p = scan.add_parser("quality")
    p.add_argument("--bound", type=int, default=QUALITY_BOUND)
    p.add_argument("--out", default=None)
    p.add_argument("--cache", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--min-k", type=int, default=1, choices=(1, 2))
    p.set_defaults(func=cmd_scan_quality)

    p = scan.add_parser("delta-ratio")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=_bounds_list, required=True,
                   help="one bound or a comma-separated list")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan_delta)

    p = sub.add_parser("conjecture")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--degree-ceiling", type=int, default=None)
    p.add_argument("--block-check-fraction", type=float, default=0.0)
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except _RESOURCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FactorizationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

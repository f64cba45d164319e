"""Command-line surface.

Single-value queries print JSON by default (a bare scalar for scalar
results).  Exact rationals are serialized as separate numerator and
denominator decimal strings, never floats.  Long sweeps write CSV rows to
stdout and progress to stderr so pipelines stay parseable.  Exit codes:
0 success, 1 verification failure, 2 bad arguments or bounds.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import characters as ch
from . import constants as co
from . import moments as mo
from .arith import carmichael_lambda, factorize, multiplicative_order
from .unit_group import BRUTE_FORCE_BOUND, count_roots, decompose
from .verify import DEFAULT_CAPS, SUITE_NAMES, VerifyPlan, run_plan

WORKERS_ENV = "LAMBDAROOTS_WORKERS"


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return 1


def _emit(obj, fmt: str) -> None:
    if fmt == "plain":
        if isinstance(obj, dict):
            for k, v in obj.items():
                print(f"{k}={v}")
        else:
            print(obj)
    else:
        print(json.dumps(obj))


def _frac_fields(prefix: str, value: Fraction) -> dict:
    return {f"{prefix}_num": str(value.numerator), f"{prefix}_den": str(value.denominator)}


def cmd_lambda(args) -> int:
    _emit(carmichael_lambda(factorize(args.n)), args.format)
    return 0


def cmd_order(args) -> int:
    _emit(multiplicative_order(args.a, factorize(args.n)), args.format)
    return 0


def cmd_rcount(args) -> int:
    brute = args.n <= BRUTE_FORCE_BOUND and not args.no_brute
    lr = count_roots(factorize(args.n), brute=brute)
    _emit({"n": args.n, "r_closed": lr.r_closed, "r_brute": lr.r_brute}, args.format)
    return 0


def cmd_delta(args) -> int:
    s = decompose(factorize(args.n))
    _emit(
        {
            "n": args.n,
            "cyclic_orders": list(s.cyclic_orders),
            "lambda": s.lam,
            "delta": {str(q): d for q, d in sorted(s.delta.items())},
        },
        args.format,
    )
    return 0


def cmd_characters(args) -> int:
    chars = ch.character_group(factorize(args.n))
    order_counts: dict[int, int] = {}
    elem_counts: dict[int, int] = {}
    for c in chars:
        order_counts[c.order] = order_counts.get(c.order, 0) + 1
        if c.is_elementary:
            elem_counts[c.order] = elem_counts.get(c.order, 0) + 1
    _emit(
        {
            "n": args.n,
            "count": len(chars),
            "order_counts": {str(k): v for k, v in sorted(order_counts.items())},
            "elementary_order_counts": {str(k): v for k, v in sorted(elem_counts.items())},
        },
        args.format,
    )
    return 0


def cmd_na(args) -> int:
    _emit({"a": args.a, "x": args.x, "count": mo.n_count(args.a, args.x)}, args.format)
    return 0


def cmd_pa(args) -> int:
    _emit({"a": args.a, "x": args.x, "count": mo.p_count(args.a, args.x)}, args.format)
    return 0


def cmd_mean(args) -> int:
    _emit({"x": args.x, **_frac_fields("mean", mo.mean_sum(args.x))}, args.format)
    return 0


def cmd_moment2(args) -> int:
    cfg = mo.MomentConfig(x=args.x, y=args.y)
    rep = mo.build_report(cfg, workers=_workers(args))
    _emit(rep.to_json_dict(), args.format)
    return 0


def cmd_sigma1(args) -> int:
    out: dict = {"x": args.x}
    if args.form in ("direct", "both"):
        out.update(_frac_fields("direct", mo.sigma1_direct(args.x)))
    if args.form in ("gcd", "both"):
        out.update(_frac_fields("gcd", mo.sigma1_gcd_form(args.x)))
    if args.form == "both":
        out["equal"] = out["direct_num"] == out["gcd_num"] and out["direct_den"] == out["gcd_den"]
    _emit(out, args.format)
    return 0


def cmd_bsum(args) -> int:
    _emit({"x": args.x, "y": args.y, **_frac_fields("b", ch.b_sum(args.x, args.y))}, args.format)
    return 0


def cmd_constants(args) -> int:
    names = {
        "artin": lambda: co.artin_constant(args.digits),
        "stephens": lambda: co.stephens_constant(args.digits),
        "theorem12": lambda: co.theorem12_constant(args.digits),
        "theorem13": lambda: co.theorem13_constant(args.digits),
    }
    wanted = sorted(names) if args.name == "all" else [args.name]
    out = []
    for name in wanted:
        cv = names[name]()
        out.append(
            {
                "name": name,
                "value": cv.value.strip(),
                "error_bound": cv.error_bound,
                "digits": cv.digits,
            }
        )
    if args.thresholds:
        out.append({"name": "thresholds", **co.threshold_report()})
    _emit(out, args.format)
    return 0


def cmd_rho1(args) -> int:
    root = co.rho1_root(args.tol)
    decimals = max(1, math.ceil(-math.log10(args.tol)))
    _emit(round(root, decimals), args.format)
    return 0


def cmd_verify(args) -> int:
    suites = SUITE_NAMES if args.all or not args.suites else tuple(args.suites.split(","))
    caps = dict(DEFAULT_CAPS)
    for setting in args.cap or []:
        name, _, value = setting.partition("=")
        caps[name] = int(value)
    plan = VerifyPlan(suites=suites, caps=caps, parallelism=_workers(args))
    ok, report = run_plan(plan)
    sys.stdout.write(report)
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    xs = [int(v) for v in args.xs.split(",")]
    ys = [int(v) for v in args.ys.split(",")] if args.ys else None
    grid = sorted((x, y) for x in xs for y in (ys if ys else [x]))
    metrics = set(mo.SweepReport.CSV_FIELDS[2:]) if args.metric == "all" else None
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(mo.SweepReport.CSV_FIELDS)
    workers = _workers(args)
    for i, (x, y) in enumerate(grid):
        print(f"sweep point {i + 1}/{len(grid)}: x={x} y={y}", file=sys.stderr)
        row = {"x": x, "y": y}
        if args.metric in ("mean", "all"):
            row.update(_frac_fields("mean", mo.mean_sum(x)))
        if args.metric in ("sigma1", "all"):
            row.update(_frac_fields("sigma1", mo.sigma1_gcd_form(x)))
        if args.metric in ("phiphi", "all"):
            row["phi_phi_sum"] = mo.phi_phi_sum(x)
        if args.metric in ("moment2", "all"):
            rep = mo.build_report(mo.MomentConfig(x=x, y=y), workers=workers)
            d = rep.to_json_dict()
            row.update({k: d[k] for k in ("m2_num", "m2_den")})
            row["diagnostics"] = json.dumps(d["diagnostics"], sort_keys=True)
            if args.metric == "all":
                row.update({k: d[k] for k in ("mean_num", "mean_den", "sigma1_num", "sigma1_den")})
                row["phi_phi_sum"] = d["phi_phi_sum"]
        writer.writerow([row.get(k, "") for k in mo.SweepReport.CSV_FIELDS])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lambdaroots",
        description="Exact computations around maximal-order residues mod n",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    common.add_argument(
        "--workers", type=int, default=None, help=f"worker count (or ${WORKERS_ENV})"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("lambda", help="Carmichael value of n")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_lambda)

    p = add_parser("order", help="multiplicative order of a mod n")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_order)

    p = add_parser("rcount", help="count of maximal-order residues mod n")
    p.add_argument("n", type=int)
    p.add_argument("--no-brute", action="store_true", help="skip the enumeration cross-check")
    p.set_defaults(fn=cmd_rcount)

    p = add_parser("delta", help="cyclic decomposition and delta invariants")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_delta)

    p = add_parser("characters", help="character group summary mod n")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_characters)

    p = add_parser("na", help="N_a(x): moduli n <= x where a has maximal order")
    p.add_argument("a", type=int)
    p.add_argument("x", type=int)
    p.set_defaults(fn=cmd_na)

    p = add_parser("pa", help="P_a(x): primes p <= x where a is a primitive root")
    p.add_argument("a", type=int)
    p.add_argument("x", type=int)
    p.set_defaults(fn=cmd_pa)

    p = add_parser("mean", help="exact sum of R(n)/n for n <= x")
    p.add_argument("x", type=int)
    p.set_defaults(fn=cmd_mean)

    p = add_parser("moment2", help="exact centered second moment report")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.set_defaults(fn=cmd_moment2)

    p = add_parser("sigma1", help="gcd-weighted double sum, both algebraic forms")
    p.add_argument("x", type=int)
    p.add_argument("--form", choices=["direct", "gcd", "both"], default="both")
    p.set_defaults(fn=cmd_sigma1)

    p = add_parser("bsum", help="exact non-principal elementary character sum B(x, y)")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.set_defaults(fn=cmd_bsum)

    p = add_parser("constants", help="Euler-product and closed-form constants")
    p.add_argument("--name", choices=["artin", "stephens", "theorem12", "theorem13", "all"], default="all")
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--thresholds", action="store_true", help="also report f at the sieve thresholds")
    p.set_defaults(fn=cmd_constants)

    p = add_parser("rho1", help="positive root of K/4 = f(K)")
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(fn=cmd_rho1)

    p = add_parser("verify", help="run the verification suites")
    p.add_argument("--all", action="store_true", help="run every suite at default caps")
    p.add_argument("--suites", type=str, default="", help="comma-separated suite names")
    p.add_argument("--cap", action="append", metavar="SUITE=N", help="lower a suite cap")
    p.set_defaults(fn=cmd_verify)

    p = add_parser("sweep", help="grid sweep emitting CSV rows")
    p.add_argument("--metric", choices=["mean", "moment2", "sigma1", "phiphi", "all"], default="all")
    p.add_argument("--xs", type=str, required=True, help="comma-separated x values")
    p.add_argument("--ys", type=str, default="", help="comma-separated y values (default: y=x)")
    p.set_defaults(fn=cmd_sweep)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``qcert``: compute q-objects, run verification suites, print congruence tables."""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from . import congruences as cg
from .polyring import LaurentPoly
from .qcore import cyclotomic, is_prime, legendre, q_binomial
from .qobjects import (
    NonIntegralExponent,
    dual_lhs,
    gk_lhs,
    q_catalan,
    q_fibonacci_rec,
    rr_rhs,
    s_sum,
    t_sum,
)
from .suites import SUITES, ConfigError, SuiteConfig, default_jobs, run, write_jsonl

OBJECTS = ("qbin", "cyclotomic", "qcatalan", "qfib", "rr", "gk-lhs", "dual-lhs", "s-sum", "t-sum")


class UsageError(ValueError):
    pass


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.object} requires {', '.join(missing)}")
    return [getattr(args, n) for n in names]


def _nonneg(name, v):
    if v < 0:
        raise UsageError(f"--{name} must be nonnegative")


def compute_object(args) -> tuple[LaurentPoly, dict]:
    """Evaluate the requested object; raises :class:`UsageError` on bad parameters."""
    obj = args.object
    if obj == "qbin":
        n, k = _need(args, "n", "k")
        return q_binomial(n, k), {"n": n, "k": k}
    if obj == "cyclotomic":
        (n,) = _need(args, "n")
        if n < 1:
            raise UsageError("--n must be at least 1")
        return cyclotomic(n), {"n": n}
    if obj == "qcatalan":
        (n,) = _need(args, "n")
        _nonneg("n", n)
        return q_catalan(n), {"n": n}
    if obj == "qfib":
        (n,) = _need(args, "n")
        a = 0 if args.a is None else args.a
        _nonneg("n", n)
        _nonneg("a", a)
        return q_fibonacci_rec(n, a), {"n": n, "a": a}
    if obj == "rr":
        (n,) = _need(args, "n")
        a = 0 if args.a is None else args.a
        _nonneg("n", n)
        if a not in (0, 1):
            raise UsageError("--a must be 0 or 1")
        return rr_rhs(n, a), {"n": n, "a": a}
    if obj in ("gk-lhs", "dual-lhs"):
        (n,) = _need(args, "n")
        if n < 1:
            raise UsageError("--n must be at least 1")
        return (gk_lhs(n) if obj == "gk-lhs" else dual_lhs(n)), {"n": n}
    if obj in ("s-sum", "t-sum"):
        n, d = _need(args, "n", "d")
        if n < 1:
            raise UsageError("--n must be at least 1")
        if obj == "s-sum":
            return s_sum(n, d), {"n": n, "d": d}
        if n < abs(d):
            raise UsageError("t-sum requires n >= |d|")
        return t_sum(n, d, lead_symbol_abs=args.reading == "abs-lead"), {"n": n, "d": d}
    raise UsageError(f"unknown object {obj}")


def cmd_compute(args) -> int:
    try:
        value, params = compute_object(args)
    except UsageError as exc:
        print(f"qcert compute: {exc}", file=sys.stderr)
        return 2
    except NonIntegralExponent as exc:
        print(f"qcert compute: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps({"object": args.object, "params": params, "value": value.to_json(), "text": str(value)}))
    else:
        print(value)
    return 0


def _print_summary(result, out) -> None:
    rows = result.summary_rows()
    width = max([len("claim")] + [len(r[0]) for r in rows])
    print(f"{'claim':<{width}}  {'instances':>9}  {'failures':>8}  {'seconds':>9}", file=out)
    for claim, count, fails, secs in rows:
        print(f"{claim:<{width}}  {count:>9}  {fails:>8}  {secs:>9.2f}", file=out)
    total_fail = len(result.failures)
    print(f"{'total':<{width}}  {len(result.reports):>9}  {total_fail:>8}  {result.wall:>9.2f}  (wall)", file=out)
    for note in result.notes:
        print(f"note: {note}", file=out)


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite, n_max=args.n_max, d_max=args.d_max, p_max=args.p_max, a_max=args.a_max,
        numeric_n_max=args.numeric_n_max, tolerance=args.tolerance, output_path=args.output,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
    )
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"qcert verify: {exc}", file=sys.stderr)
        return 2
    result = run(cfg)
    if cfg.output_path:
        write_jsonl(result.reports, cfg.output_path)
    _print_summary(result, sys.stdout)
    return 1 if result.failures else 0


def p_binomial_rows(p_max: int, a_max: int, d_max: int) -> list[dict]:
    rows = []
    for p in (p for p in range(2, p_max + 1) if is_prime(p)):
        for a in range(1, a_max + 1):
            pa = p ** a
            for d in range(-min(d_max, pa), min(d_max, pa) + 1):
                total = sum(comb(2 * k, k + d) for k in range(pa) if 0 <= k + d <= 2 * k)
                sym = legendre(pa - abs(d), 3)
                rows.append({"p": p, "a": a, "p^a": pa, "d": d, "sum": total, "sum mod p": total % p,
                             "symbol": sym, "symbol mod p": sym % p, "holds": total % p == sym % p})
    return rows


def p_catalan_rows(p_max: int, a_max: int) -> list[dict]:
    rows = []
    for p in (p for p in range(2, p_max + 1) if is_prime(p)):
        for a in range(1, a_max + 1):
            for r in cg.check_p_catalan(p, a):
                rows.append({"p": p, "a": a, "p^a": p ** a, "claim": r.claim_id, "lhs": r.lhs_residue,
                             "rhs": r.rhs_residue, "modulus": 2 * p if p == 2 and "catalan" in r.claim_id else p,
                             "holds": r.holds})
    return rows


def format_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def cmd_table(args) -> int:
    if args.p_max < 2:
        print("qcert table: --p-max must be at least 2", file=sys.stderr)
        return 2
    if args.a_max < 1 or args.d_max < 0:
        print("qcert table: --a-max must be at least 1 and --d-max nonnegative", file=sys.stderr)
        return 2
    if args.corollary == "p-binomial":
        rows = p_binomial_rows(args.p_max, args.a_max, args.d_max)
    else:
        rows = p_catalan_rows(args.p_max, args.a_max)
    if args.format == "json":
        print(json.dumps(rows, default=str))
    else:
        print(format_table(rows))
    return 0 if all(r["holds"] for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one q-object")
    p.add_argument("object", choices=OBJECTS)
    for name in ("n", "k", "d", "a"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--reading", choices=("printed", "abs-lead"), default="printed",
                   help="sign convention of the leading symbol in t-sum")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES + ("all",), required=True)
    v.add_argument("--n-max", type=int, help="largest n (default depends on the suite)")
    v.add_argument("--d-max", type=int, default=10)
    v.add_argument("--p-max", type=int, default=13)
    v.add_argument("--a-max", type=int, help="largest a for bc1 (default 4) and prime powers (default p^a <= 343)")
    v.add_argument("--numeric-n-max", type=int, default=30)
    v.add_argument("--tolerance", type=float, default=1e-6)
    v.add_argument("--jobs", type=int, help="worker processes (default $QCERT_JOBS or 1)")
    v.add_argument("--output", help="write JSON-lines report here")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="prime-power congruence tables")
    t.add_argument("corollary", choices=("p-binomial", "p-catalan"))
    t.add_argument("--p-max", type=int, default=7)
    t.add_argument("--a-max", type=int, default=2)
    t.add_argument("--d-max", type=int, default=5)
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

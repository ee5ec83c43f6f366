"""Command-line front end: ``unitary-newforms <subcommand> [options]``.

Exit codes: 0 when every check passes, 1 when some identity fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .arithmetic import Q, is_prime
from .newform import NewformParams
from .suites import (
    report_passed,
    run_analytic,
    run_cosets,
    run_newform_suite,
    run_newform_table,
)

TABLE_FIELDS = ["q", "N", "n_pi", "lambda", "Z_W", "L", "gamma", "epsilon",
                "monomial_exponent", "conjecture_holds", "status"]
CHECK_FIELDS = ["suite", "name", "status", "witness"]


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'1..3' -> [1, 2, 3]; '0,2' -> [0, 2]; '4' -> [4]."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(x) for x in part.split("..", 1))
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"cannot parse {text!r} as integers or a range a..b") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def parse_lambdas(text: str) -> list:
    try:
        vals = [Q(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad lambda list {text!r}: {exc}") from exc
    if not vals:
        raise UsageError("empty lambda list")
    return vals


def _odd_primes(values) -> list[int]:
    for p in values:
        if p == 2:
            raise UsageError("p must be an odd prime (residual characteristic 2 is excluded)")
        if not is_prime(p):
            raise UsageError(f"p = {p} is not a prime")
    return values


def resolve_seed(arg_seed: int) -> int:
    env = os.environ.get("NEWFORM_SEED")
    if env is None or env == "":
        return arg_seed
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"NEWFORM_SEED must be an integer, got {env!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="unitary-newforms",
        description="Exact verification suites for U(2,1) newforms over unramified E/F.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes across parameter points")
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="overridden by NEWFORM_SEED")

    c = sub.add_parser("verify-cosets", help="Hecke and level-lowering coset representatives")
    c.add_argument("--p", default="3", help="odd prime(s), e.g. 3 or 3,5")
    c.add_argument("--n", default="1..3", help="levels, e.g. 1..3")
    c.add_argument("--trials", type=int, default=10_000)
    c.add_argument("--samples", type=int, default=1000, help="samples per conjugation identity")
    common(c)

    a = sub.add_parser("verify-analytic", help="Fourier transforms and zeta-integral identities")
    a.add_argument("--p", default="3")
    a.add_argument("--n", default="0..3")
    a.add_argument("--samples", type=int, default=1000)
    a.add_argument("--members", type=int, default=100, help="random Schwartz functions per level")
    common(a)

    t = sub.add_parser("newform-table", help="per-(q, N, lambda) local factor table")
    t.add_argument("--q", default="3")
    t.add_argument("--N", default="2")
    t.add_argument("--lambda", dest="lambdas", default="0,-9,5",
                   help="comma-separated rationals; write --lambda=-9,5 when the list starts with '-'")
    t.add_argument("--n-pi", type=int, default=0, help="conductor of the central character")
    t.add_argument("--K", type=int, default=12, help="truncation order for the recursion check")
    common(t, seed=False)

    al = sub.add_parser("all", help="every suite at the default parameters")
    al.add_argument("--trials", type=int, default=10_000)
    al.add_argument("--samples", type=int, default=1000)
    common(al)
    return ap


def _validate_positive(name, value, minimum=1):
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}")


def _check_rows(report):
    for c in report["checks"]:
        yield {"suite": report["suite"], "name": c["name"], "status": c["status"],
               "witness": json.dumps(c["witness"], default=str) if "witness" in c else ""}


def render(reports, fmt: str, table=None) -> str:
    if fmt == "json":
        payload = reports[0] if len(reports) == 1 else {"suite": "all", "reports": reports}
        if table is not None:
            payload = dict(payload, rows=table)
        return json.dumps(payload, indent=2, default=str)
    buf = io.StringIO()
    if fmt == "csv":
        if table is not None:
            w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
            w.writeheader()
            for r in table:
                w.writerow({k: "" if r.get(k) is None else r[k] for k in TABLE_FIELDS})
        else:
            w = csv.DictWriter(buf, fieldnames=CHECK_FIELDS, lineterminator="\n")
            w.writeheader()
            for rep in reports:
                w.writerows(_check_rows(rep))
        return buf.getvalue()
    for rep in reports:
        n_fail = sum(c["status"] != "pass" for c in rep["checks"])
        buf.write(f"== {rep['suite']}: {len(rep['checks']) - n_fail} passed, {n_fail} failed "
                  f"({rep['elapsed_ms'] / 1000:.1f} s)\n")
        for c in rep["checks"]:
            extra = ""
            if "detail" in c:
                extra = "  " + " ".join(f"{k}={v}" for k, v in c["detail"].items())
            buf.write(f"{c['status'].upper():4}  {c['name']}{extra}\n")
            if "witness" in c:
                buf.write(f"      witness: {json.dumps(c['witness'], default=str)[:400]}\n")
    if table is not None:
        buf.write("\n")
        for r in table:
            buf.write(" | ".join(f"{k}={r[k]}" for k in TABLE_FIELDS) + "\n")
    return buf.getvalue()


def read_table_csv(text: str) -> list[dict]:
    """Inverse of the newform-table CSV export."""
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        row = {}
        for k in TABLE_FIELDS:
            v = r[k]
            if k in ("q", "N", "n_pi"):
                row[k] = int(v)
            elif k == "monomial_exponent":
                row[k] = int(v) if v else None
            elif k == "conjecture_holds":
                row[k] = v == "True"
            else:
                row[k] = v if v else None
        rows.append(row)
    return rows


def run(argv=None) -> tuple[int, str]:
    ap = build_parser()
    args = ap.parse_args(argv)
    _validate_positive("--jobs", args.jobs)
    table = None
    if args.command == "verify-cosets":
        ps = _odd_primes(parse_range(args.p))
        ns = parse_range(args.n)
        if min(ns) < 1:
            raise UsageError("coset suites need n >= 1")
        _validate_positive("--trials", args.trials)
        _validate_positive("--samples", args.samples)
        reports = [run_cosets(ps, ns, args.trials, args.samples, resolve_seed(args.seed), args.jobs)]
    elif args.command == "verify-analytic":
        ps = _odd_primes(parse_range(args.p))
        ns = parse_range(args.n)
        if min(ns) < 0:
            raise UsageError("analytic suites need n >= 0")
        _validate_positive("--samples", args.samples)
        _validate_positive("--members", args.members)
        reports = [run_analytic(ps, ns, args.samples, resolve_seed(args.seed), args.members, args.jobs)]
    elif args.command == "newform-table":
        qs, Ns = parse_range(args.q), parse_range(args.N)
        lams = parse_lambdas(args.lambdas)
        _validate_positive("--K", args.K)
        for q in qs:
            for N in Ns:
                try:
                    NewformParams(q, N, args.n_pi, 0)
                except ValueError as exc:
                    raise UsageError(f"row q={q} N={N} n_pi={args.n_pi} rejected: {exc} "
                                     "(newforms here require N >= 2 and N > n_pi)") from exc
        rep, table = run_newform_table(qs, Ns, lams, args.n_pi)
        extra = run_newform_suite(qs, Ns, args.K, args.n_pi)
        rep["checks"] += extra["checks"]
        rep["params"]["K"] = args.K
        rep["elapsed_ms"] += extra["elapsed_ms"]
        reports = [rep]
    else:
        _validate_positive("--trials", args.trials)
        _validate_positive("--samples", args.samples)
        seed = resolve_seed(args.seed)
        reports = [
            run_cosets([3, 5], [1, 2, 3], args.trials, args.samples, seed, args.jobs),
            run_analytic([3, 5], [0, 1, 2, 3], args.samples, seed, 100, args.jobs),
            run_newform_suite([3, 5, 7], [2, 3, 4, 5]),
        ]
    code = 0 if all(report_passed(r) for r in reports) else 1
    return code, render(reports, args.format, table)


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(f"unitary-newforms: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

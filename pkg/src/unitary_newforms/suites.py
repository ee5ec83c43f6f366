"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a report ``{suite, params, checks, elapsed_ms}`` where every
check is ``{name, status, witness?, detail?}`` with status ``"pass"`` or
``"fail"``.  Randomness is drawn from a generator seeded by the run seed and
the parameter point, so reports do not depend on scheduling.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from .arithmetic import Q, QuadField, val_F
from .cosets import check_complete_randomized, check_distinct, hecke_reps, level_reps
from .group import random_KH, t_H, verify_conjugation_identities
from .newform import (
    NewformParams,
    check_hecke_relation,
    generate_c,
    newform_record,
    supercuspidal_classify,
    verify_monomial,
    zeta_W_closed,
    zeta_W_series,
)
from .ratfunc import L_E, RationalFn, subst_one_minus_s
from .schwartz import (
    LatticeFn,
    f_function,
    find_difference,
    fourier_hat,
    fourier_star,
    gl2_act,
    phi_n,
    random_lattice_fn,
    z_integral,
)

MINUS_ONE = ((-1, 0), (0, 1))


def point_rng(seed: int, *labels) -> random.Random:
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def _check(name, ok, witness=None, **detail):
    out = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None and not ok:
        out["witness"] = witness
    if detail:
        out["detail"] = detail
    return out


def _report(suite, params, checks, t0):
    return {"suite": suite, "params": params, "checks": checks,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 1)}


def report_passed(report) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


# ---------------------------------------------------------------- cosets

def coset_point(p: int, n: int, trials: int, samples: int, seed: int) -> list:
    K = QuadField(p)
    checks = []
    kinds = [("hecke", hecke_reps)] + ([("level", level_reps)] if n >= 2 else [])
    for kind, build in kinds:
        reps = build(n, K)
        expected = reps.expected_count()
        t0 = time.perf_counter()
        dist = check_distinct(reps)
        checks.append(_check(
            f"{kind} representatives distinct p={p} n={n}",
            dist["ok"] and len(reps) == expected,
            witness={"coincident": dist["coincident"][:3]},
            count=len(reps), expected=expected, pairs_tested=dist["pairs_tested"],
            seconds=round(time.perf_counter() - t0, 2)))
        comp = check_complete_randomized(kind, n, K, trials, point_rng(seed, "cosets", kind, p, n))
        checks.append(_check(
            f"{kind} representatives complete p={p} n={n}",
            not comp["failures"],
            witness={"failures": comp["failures"][:3]},
            trials=trials, reps_hit=comp["reps_hit"], reps_total=comp["reps_total"],
            stage1_hit=comp["stage1_hit"], stage1_total=comp["stage1_total"],
            stage2_hit=comp["stage2_hit"], stage2_total=comp["stage2_total"],
            seconds=round(comp["elapsed"], 2)))
    ids = verify_conjugation_identities(n, samples, K, point_rng(seed, "identities", p, n))
    for name, r in ids.items():
        checks.append(_check(f"{name} p={p} n={n}", not r["failures"],
                             witness={"failures": r["failures"][:3]}, checked=r["checked"]))
    return checks


# ---------------------------------------------------------------- analytic

def _random_stabilizer(n: int, p: int, rng: random.Random):
    """Random g in GL_2(o) conjugated to stabilise p^n + o under (x, y) -> (x, y) g."""
    P = Q(p)
    while True:
        g11 = Q(rng.randrange(1, p)) + p * rng.randint(-3, 3)
        g22 = Q(rng.randrange(1, p)) + p * rng.randint(-3, 3)
        g21 = rng.randint(-9, 9) * P**n
        g12 = rng.randint(-9, 9) / P**n
        det = g11 * g22 - g12 * g21
        if det and val_F(det, p) == 0:
            return ((g11, g12), (g21, g22))


def analytic_point(p: int, n: int, samples: int, members: int, seed: int) -> list:
    K = QuadField(p)
    q = Q(p)
    X = RationalFn.X(p)
    LE = L_E(p)
    checks = []
    Pn = phi_n(n, p)
    Hn = fourier_hat(Pn)
    target = LatticeFn.char(p, a=0, b=-n, coeff=q**-n)
    checks.append(_check(f"hat Phi_n = q^-n ch(o + p^-n) n={n}", find_difference(Hn, target) is None,
                         witness=_w(find_difference(Hn, target))))
    checks.append(_check(f"double hat Phi_n = Phi_n n={n}", fourier_hat(Hn) == Pn))
    star = gl2_act(MINUS_ONE, fourier_star(Pn))
    checks.append(_check(f"d(-1) Phi_n* = hat Phi_n n={n}", star == Hn))

    rng = point_rng(seed, "analytic", p, n)
    bad_double, bad_star = [], []
    for _ in range(members):
        F = random_lattice_fn(p, rng)
        if not fourier_hat(fourier_hat(F)) == F:
            bad_double.append(repr(F))
        if not gl2_act(MINUS_ONE, fourier_star(F)) == fourier_hat(F):
            bad_star.append(repr(F))
    checks.append(_check(f"double hat = identity on random members n={n}", not bad_double,
                         witness=bad_double[:2], members=members))
    checks.append(_check(f"d(-1) Phi* = hat Phi on random members n={n}", not bad_star,
                         witness=bad_star[:2], members=members))

    # zeta integrals along the line (0, r) g
    expect_hat_dual = RationalFn.monomial(q**n, n, p) * subst_one_minus_s(LE)
    bad_z, bad_zhat = [], []
    for _ in range(samples):
        g = _random_stabilizer(n, p, rng)
        if z_integral(g, Pn) != LE:
            bad_z.append(str(g))
        if subst_one_minus_s(z_integral(g, Hn)) != expect_hat_dual:
            bad_zhat.append(str(g))
    checks.append(_check(f"z(s, k, Phi_n) = L_E(s) on the lattice stabiliser n={n}", not bad_z,
                         witness=bad_z[:2], samples=samples))
    checks.append(_check(f"z(1-s, k, hat Phi_n) = q^n X^n L_E(1-s) n={n}", not bad_zhat,
                         witness=bad_zhat[:2], samples=samples))

    bad_f, bad_fhat, bad_torus = [], [], []
    unif = K.uniformizer
    for _ in range(samples):
        k = random_KH(n, K, rng)
        if f_function(k, Pn) != LE:
            bad_f.append(repr(k))
        if subst_one_minus_s(f_function(k, Hn)) != expect_hat_dual:
            bad_fhat.append(repr(k))
        if f_function(t_H(unif) @ k, Pn) != X * LE:
            bad_torus.append(repr(k))
    checks.append(_check(f"f(s, k, Phi_n) = L_E(s) for k in K_n,H n={n}", not bad_f,
                         witness=bad_f[:2], samples=samples))
    checks.append(_check(f"f(1-s, k, hat Phi_n) = q^n X^n L_E(1-s) for k in K_n,H n={n}", not bad_fhat,
                         witness=bad_fhat[:2], samples=samples))
    checks.append(_check(f"f(s, t(uniformizer) k, Phi_n) = X L_E(s) n={n}", not bad_torus,
                         witness=bad_torus[:2], samples=samples))
    return checks


def _w(point):
    return None if point is None else [str(point[0]), str(point[1])]


# ---------------------------------------------------------------- newforms

def lambda_grid(q: int) -> list:
    return [Q(0), Q(-q * q), Q(1), Q(-1), Q(q * q)]


def other_lambdas(q: int, count: int = 20) -> list:
    """count values of lambda outside {0, -q^2}."""
    vals, k = [], 1
    while len(vals) < count:
        for v in (Q(k), Q(-k), Q(k, 2) - q * q):
            if v not in (0, -q * q) and v not in vals and len(vals) < count:
                vals.append(v)
        k += 1
    return vals


def newform_checks(qs, Ns, K: int = 12, n_c: int = 0) -> list:
    checks = []
    for q in qs:
        for lam in lambda_grid(q):
            prm = NewformParams(q, max(Ns), n_c, lam)
            seq = generate_c(prm, K)
            series = zeta_W_closed(prm).series_expand(K)
            trunc = zeta_W_series(seq, prm, K)
            trunc_coeffs = trunc.series_expand(K)
            checks.append(_check(f"closed form matches recursion to order {K} q={q} lambda={lam}",
                                 series == trunc_coeffs,
                                 witness={"closed": [str(x) for x in series], "recursion": [str(x) for x in trunc_coeffs]}))
            checks.append(_check(f"Hecke relation q={q} lambda={lam}", check_hecke_relation(seq, prm)))
            laurent = zeta_W_closed(prm).is_laurent_polynomial()
            checks.append(_check(f"Z(s, W) Laurent iff lambda in {{0, -q^2}} q={q} lambda={lam}",
                                 laurent == (lam in (0, -q * q))))
        for N in Ns:
            if N <= n_c:
                continue
            eps_seen = set()
            for lam in (Q(0), Q(-q * q)):
                prm = NewformParams(q, N, n_c, lam)
                cls = supercuspidal_classify(prm)
                ok = cls["status"] == "supercuspidal"
                eps = cls["epsilon"]
                target = RationalFn.monomial(Q(q) ** N, N, q)
                ok = ok and cls["Z"] == cls["L"] and eps == target and verify_monomial(eps)
                ok = ok and eps * subst_one_minus_s(eps) == 1
                eps_seen.add(str(eps))
                checks.append(_check(f"supercuspidal branch q={q} N={N} lambda={lam}", ok,
                                     witness=newform_record(prm),
                                     L=str(cls["L"]), epsilon=str(eps)))
            checks.append(_check(f"epsilon independent of branch q={q} N={N}", len(eps_seen) == 1))
            bad = []
            for lam in other_lambdas(q):
                if supercuspidal_classify(NewformParams(q, N, n_c, lam))["status"] == "supercuspidal":
                    bad.append(str(lam))
            checks.append(_check(f"dichotomy flag for 20 other lambda q={q} N={N}", not bad, witness=bad))
    return checks


# ---------------------------------------------------------------- drivers

def _run_points(fn, args_list, jobs: int):
    if jobs > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(fn, *zip(*args_list)))
    else:
        results = [fn(*a) for a in args_list]
    return [c for r in results for c in r]


def run_cosets(ps, ns, trials: int, samples: int, seed: int, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    for n in ns:
        if n < 1:
            raise ValueError("coset suites need n >= 1")
    pts = [(p, n, trials, samples, seed) for p in ps for n in ns]
    checks = _run_points(coset_point, pts, jobs)
    params = {"p": list(ps), "n": list(ns), "trials": trials, "samples": samples, "seed": seed}
    return _report("verify-cosets", params, checks, t0)


def run_analytic(ps, ns, samples: int, seed: int, members: int = 100, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    for n in ns:
        if n < 0:
            raise ValueError("analytic suites need n >= 0")
    pts = [(p, n, samples, members, seed) for p in ps for n in ns]
    checks = _run_points(analytic_point, pts, jobs)
    params = {"p": list(ps), "n": list(ns), "samples": samples, "members": members, "seed": seed}
    return _report("verify-analytic", params, checks, t0)


def run_newform_table(qs, Ns, lambdas, n_c: int = 0) -> tuple[dict, list]:
    t0 = time.perf_counter()
    rows = []
    for q in qs:
        for N in Ns:
            for lam in lambdas:
                rows.append(newform_record(NewformParams(q, N, n_c, lam)))
    checks = []
    for r in rows:
        if r["status"] == "supercuspidal":
            ok = r["conjecture_holds"] and r["monomial_exponent"] == r["N"]
        else:
            ok = True
        checks.append(_check(f"row q={r['q']} N={r['N']} lambda={r['lambda']}", ok, witness=r,
                             status_flag=r["status"]))
    params = {"q": list(qs), "N": list(Ns), "lambda": [str(x) for x in lambdas], "n_pi": n_c}
    return _report("newform-table", params, checks, t0), rows


def run_newform_suite(qs, Ns, K: int = 12, n_c: int = 0) -> dict:
    t0 = time.perf_counter()
    params = {"q": list(qs), "N": list(Ns), "K": K, "n_pi": n_c}
    return _report("newform", params, newform_checks(qs, Ns, K, n_c), t0)


__all__ = [
    "run_cosets", "run_analytic", "run_newform_table", "run_newform_suite", "report_passed",
    "coset_point", "analytic_point", "newform_checks", "lambda_grid", "other_lambdas", "point_rng",
]

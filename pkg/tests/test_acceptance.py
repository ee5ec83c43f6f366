"""Acceptance criteria, each run at full scale and reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import random
import re
import sys
import time

import pytest

from unitary_newforms.ratfunc import gcd_generator
from unitary_newforms.suites import newform_checks, run_analytic, run_cosets

from gcd_oracle import brute_force_generator, random_ideal

SEED = 20261015
RESULTS: dict[str, tuple[bool, str]] = {}
TIMINGS: dict[str, float] = {}


def record(name: str, ok: bool, note: str = "") -> None:
    RESULTS[name] = (ok, note)
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {note}")


def _failed(checks):
    return [c["name"] for c in checks if c["status"] != "pass"]


@pytest.fixture(scope="module")
def coset_report():
    t0 = time.perf_counter()
    rep = run_cosets([3, 5], [1, 2, 3], trials=10_000, samples=1000, seed=SEED)
    TIMINGS["cosets"] = time.perf_counter() - t0
    return rep


@pytest.fixture(scope="module")
def analytic_report():
    t0 = time.perf_counter()
    rep = run_analytic([3, 5], [0, 1, 2, 3], samples=1000, seed=SEED, members=100)
    TIMINGS["analytic"] = time.perf_counter() - t0
    return rep


def test_criterion_1_coset_distinctness(coset_report):
    checks = [c for c in coset_report["checks"] if "distinct" in c["name"]]
    expected_names = {f"hecke representatives distinct p={p} n={n}" for p in (3, 5) for n in (1, 2, 3)}
    expected_names |= {f"level representatives distinct p={p} n={n}" for p in (3, 5) for n in (2, 3)}
    names = {c["name"] for c in checks}
    ok = names == expected_names and not _failed(checks)
    for c in checks:
        p = int(re.search(r"p=(\d+)", c["name"]).group(1))
        want = (p + 1) * p**3 if c["name"].startswith("hecke") else (p + 1) * p**2
        ok = ok and c["detail"]["count"] == want
    # runtime is dominated by the pairwise test; allow 2 minutes per (p, n)
    ok = ok and all(c["detail"]["seconds"] < 120 for c in checks)
    slowest = max(c["detail"]["seconds"] for c in checks)
    record("1 coset distinctness", ok, f"{len(checks)} lists, slowest {slowest:.1f} s")
    assert ok


def test_criterion_2_coset_completeness(coset_report):
    checks = [c for c in coset_report["checks"] if "complete" in c["name"]]
    total = sum(c["detail"]["seconds"] for c in checks)
    ok = len(checks) == 10 and not _failed(checks) and all(c["detail"]["trials"] == 10_000 for c in checks)
    ok = ok and total < 300
    hit_all = all(c["detail"]["reps_hit"] == c["detail"]["reps_total"] for c in checks)
    record("2 coset completeness", ok,
           f"{len(checks)} x 10^4 trials, {total:.0f} s total, every representative hit: {hit_all}")
    assert ok


def test_criterion_3_conjugation_identities(coset_report):
    checks = [c for c in coset_report["checks"]
              if "distinct" not in c["name"] and "complete" not in c["name"]]
    sampled = [c for c in checks if "squared" not in c["name"] and "zeta t_n = t_{n-1}" not in c["name"]]
    ok = not _failed(checks) and sampled and all(c["detail"]["checked"] >= 1000 for c in sampled)
    record("3 conjugation identities", bool(ok), f"{len(checks)} identity/parameter checks, "
           f"min samples {min(c['detail']['checked'] for c in sampled)}")
    assert ok


def test_criterion_4_fourier_suite(analytic_report):
    checks = [c for c in analytic_report["checks"]
              if "hat" in c["name"] and "z(" not in c["name"] and "f(" not in c["name"]]
    members = [c for c in checks if "random members" in c["name"]]
    ok = not _failed(checks) and len(checks) == 2 * 4 * 5 and all(c["detail"]["members"] >= 100 for c in members)
    record("4 Fourier suite", ok, f"{len(checks)} checks over p in {{3,5}}, n in 0..3")
    assert ok


def test_criterion_5_zeta_identities(analytic_report):
    checks = [c for c in analytic_report["checks"] if "z(" in c["name"] or "f(" in c["name"]]
    ok = not _failed(checks) and len(checks) == 2 * 4 * 5 and all(c["detail"]["samples"] >= 1000 for c in checks)
    record("5 zeta-identity suite", ok, f"{len(checks)} checks, >= 1000 samples each")
    assert ok


def test_criterion_6_recursion_vs_closed_form():
    t0 = time.perf_counter()
    checks = [c for c in newform_checks([3, 5, 7], [2], K=12) if "closed form" in c["name"]]
    TIMINGS["recursion"] = time.perf_counter() - t0
    ok = len(checks) == 3 * 5 and not _failed(checks)
    record("6 recursion vs closed form", ok, f"{len(checks)} (q, lambda) pairs to order 12")
    assert ok


def test_criterion_7_supercuspidal_endgame():
    t0 = time.perf_counter()
    checks = newform_checks([3, 5, 7], [2, 3, 4, 5], K=12)
    TIMINGS["endgame"] = time.perf_counter() - t0
    branch = [c for c in checks if "supercuspidal branch" in c["name"]]
    flags = [c for c in checks if "dichotomy flag" in c["name"]]
    ok = not _failed(checks) and len(branch) == 3 * 4 * 2 and len(flags) == 3 * 4
    record("7 supercuspidal endgame", ok, f"{len(branch)} branch checks, {len(flags)} x 20 other lambda")
    assert ok


def test_criterion_8_gcd_oracle():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    bad = []
    for i in range(50):
        gens = random_ideal(rng)
        if gcd_generator(gens) != brute_force_generator(gens):
            bad.append(i)
    TIMINGS["gcd"] = time.perf_counter() - t0
    record("8 gcd oracle", not bad, f"50 ideals, mismatches {bad}")
    assert not bad


def test_full_suite_time_budget():
    needed = {"cosets", "analytic", "recursion", "endgame", "gcd"}
    if not needed <= set(TIMINGS):
        pytest.skip("budget check needs the other criteria in the same session")
    total = sum(TIMINGS.values())
    record("full suite under 15 minutes", total < 900, f"{total:.0f} s")
    assert total < 900


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))

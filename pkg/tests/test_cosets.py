import random

import pytest

from unitary_newforms.arithmetic import QuadField
from unitary_newforms.cosets import (
    CosetRepList,
    check_complete_randomized,
    check_distinct,
    coset_reduce,
    coset_reduce_hecke,
    coset_reduce_level,
    hecke_reps,
    level_reps,
)
from unitary_newforms.group import Subgroup, make_zeta_pow, membership, random_element

K3, K5 = QuadField(3), QuadField(5)


def test_counts():
    assert len(hecke_reps(1, K3)) == 108
    assert len(hecke_reps(2, K5)) == 750
    assert len(level_reps(2, K3)) == 36
    assert len(level_reps(3, K3)) == 36


def test_hypotheses_enforced():
    with pytest.raises(ValueError):
        hecke_reps(0, K3)
    with pytest.raises(ValueError):
        level_reps(1, K3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reps_in_ambient(n):
    for reps in [hecke_reps(n, K3)] + ([level_reps(n, K3)] if n >= 2 else []):
        assert all(membership(reps.ambient, r) for r in reps.reps)


def test_distinct_small_cases():
    assert check_distinct(hecke_reps(1, K3))["ok"]
    assert check_distinct(level_reps(2, K3))["ok"]


def test_duplicate_detected():
    reps = hecke_reps(1, K3)
    dup = CosetRepList("hecke", 1, K3, reps.reps + [reps.reps[5]], reps.tags + [reps.tags[5]])
    res = check_distinct(dup)
    assert not res["ok"] and len(res["coincident"]) == 1


@pytest.mark.parametrize("n", [1, 2])
def test_reduce_listed_rep_is_idempotent(n):
    reps = hecke_reps(n, K3)
    for i, r in enumerate(reps.reps):
        assert coset_reduce_hecke(r, n, reps).index == i


@pytest.mark.parametrize("n", [2, 3])
def test_reduce_level_listed_rep(n):
    reps = level_reps(n, K3)
    for i, r in enumerate(reps.reps):
        assert coset_reduce_level(r, n, reps).index == i


@pytest.mark.parametrize("kind,n", [("hecke", 1), ("hecke", 3), ("level", 2), ("level", 3)])
def test_reduce_rep_times_small_subgroup(kind, n):
    rng = random.Random(f"{kind}{n}")
    reps = hecke_reps(n, K3) if kind == "hecke" else level_reps(n, K3)
    for _ in range(150):
        i = rng.randrange(len(reps))
        h = random_element(reps.small, K3, rng, 8)
        assert coset_reduce(reps.reps[i] @ h, reps).index == i


def test_reduce_rejects_outside_ambient():
    zeta = make_zeta_pow(1, K3)
    with pytest.raises(ValueError):
        coset_reduce_hecke(zeta, 1)
    with pytest.raises(ValueError):
        coset_reduce_level(zeta, 2)


@pytest.mark.parametrize("kind,n,p,trials", [("hecke", 1, 3, 2000), ("level", 2, 3, 2000), ("hecke", 2, 5, 1000)])
def test_randomized_completeness(kind, n, p, trials):
    res = check_complete_randomized(kind, n, QuadField(p), trials, random.Random(1))
    assert res["failures"] == []
    assert res["stage1_hit"] == res["stage1_total"]


def test_small_subgroup_is_subgroup_of_ambient():
    rng = random.Random(2)
    for n in (1, 2, 3):
        for _ in range(30):
            assert membership(Subgroup("K", n), random_element(Subgroup("HeckeCap", n), K3, rng, 6))
        if n >= 2:
            for _ in range(30):
                assert membership(Subgroup("K", n - 1), random_element(Subgroup("LevelCap", n), K3, rng, 6))

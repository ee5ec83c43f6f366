"""Coset representatives for the Hecke and level-lowering operators.

``hecke_reps(n)`` lists K_n / (K_n cap zeta K_n zeta^-1) and ``level_reps(n)``
lists K_{n-1} / (K_{n-1} cap Z_{n-1} K_n).  Distinctness is checked exactly on
all pairs; completeness is audited by running the two-stage reduction on
random subgroup elements, each reduction ending in an exact membership
certificate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .arithmetic import Q, QuadExtElem, QuadField, mod_pk, val_E
from .group import (
    GroupElem,
    Subgroup,
    make_tn,
    make_u,
    make_uhat,
    membership,
    product_membership,
    random_element,
    u_param,
)


class CosetReductionError(ArithmeticError):
    """The constructive reduction did not land where the coset lemma says it must."""


@dataclass
class CosetRepList:
    kind: str  # "hecke" or "level"
    n: int
    K: QuadField
    reps: list = field(default_factory=list)  # GroupElem
    tags: list = field(default_factory=list)  # parameter dicts
    index: dict = field(default_factory=dict)  # canonical key -> position

    @property
    def ambient(self) -> Subgroup:
        return Subgroup("K", self.n) if self.kind == "hecke" else Subgroup("K", self.n - 1)

    @property
    def small(self) -> Subgroup:
        return Subgroup("HeckeCap", self.n) if self.kind == "hecke" else Subgroup("LevelCap", self.n)

    def expected_count(self) -> int:
        q = self.K.q
        return q**3 * (q + 1) if self.kind == "hecke" else q**2 * (q + 1)

    def __len__(self):
        return len(self.reps)

    def _add(self, key, g: GroupElem, tag: dict):
        self.index[key] = len(self.reps)
        self.reps.append(g)
        self.tags.append(tag)


def _res1(x: QuadExtElem, shift: int) -> tuple[int, int]:
    """Residue pair of x / p^shift modulo p_E."""
    p = x.K.p
    s = Q(p) ** shift
    return mod_pk(x.a / s, p, 1), mod_pk(x.b / s, p, 1)


def hecke_reps(n: int, K: QuadField) -> CosetRepList:
    """t_n u(y, z sqrt(eps) - y ybar/2) and u(a, b sqrt(eps) - a abar/2)."""
    if n < 1:
        raise ValueError("Hecke coset representatives need n >= 1")
    out = CosetRepList("hecke", n, K)
    tn = make_tn(n, K)
    for y in K.residue_reps(0, 1):
        for jz, z in enumerate(K.base_reps(1 - n, 2 - n)):
            out._add(("t", _res1(y, 0), jz), tn @ make_u(y, u_param(y, z)),
                     {"form": "t_n u", "y": str(y), "z": str(z)})
    for a in K.residue_reps(0, 1):
        for jb, b in enumerate(K.base_reps(-n, 2 - n)):
            out._add(("u", _res1(a, 0), jb), make_u(a, u_param(a, b)),
                     {"form": "u", "a": str(a), "b": str(b)})
    return out


def level_reps(n: int, K: QuadField) -> CosetRepList:
    """t_{n-1} uhat(y, -y ybar/2) and uhat(a, b sqrt(eps) - a abar/2)."""
    if n < 2:
        raise ValueError("level-lowering coset representatives need n >= 2")
    out = CosetRepList("level", n, K)
    tn1 = make_tn(n - 1, K)
    for y in K.residue_reps(n - 1, n):
        out._add(("t", _res1(y, n - 1)), tn1 @ make_uhat(y, u_param(y, 0)),
                 {"form": "t_{n-1} uhat", "y": str(y)})
    for a in K.residue_reps(n - 1, n):
        for jb, b in enumerate(K.base_reps(n - 1, n)):
            out._add(("u", _res1(a, n - 1), jb), make_uhat(a, u_param(a, b)),
                     {"form": "uhat", "a": str(a), "b": str(b)})
    return out


def check_distinct(reps: CosetRepList) -> dict:
    """Exhaustive pairwise test that r_i^-1 r_j is outside the small subgroup."""
    small = reps.small
    inverses = [r.inverse() for r in reps.reps]
    coincident = []
    tests = 0
    for i, ri in enumerate(inverses):
        for j in range(i + 1, len(reps.reps)):
            tests += 1
            if product_membership(small, ri, reps.reps[j]):
                coincident.append((reps.tags[i], reps.tags[j]))
    return {"ok": not coincident, "pairs_tested": tests, "coincident": coincident}


@dataclass
class Reduction:
    """Outcome of a coset reduction: the listed representative and both stage labels."""

    index: int
    rep: GroupElem
    stage1: tuple
    stage2: tuple


def coset_reduce_hecke(k: GroupElem, n: int, reps: CosetRepList | None = None) -> Reduction:
    """Find the listed r with r^-1 k in K_n cap zeta K_n zeta^-1."""
    K = k.K
    p = K.p
    reps = reps or hecke_reps(n, K)
    if not membership(Subgroup("K", n), k):
        raise ValueError("element is not in K_n")
    P = Q(p)
    # stage 1: K_n -> K'
    if val_E(k[2, 2]) >= 1:
        stage1 = ("t",)
        k1 = make_tn(n, K) @ k
        x1 = None
    else:
        x = (k[0, 2] / k[2, 2]).b
        jx = mod_pk(x * P**n, p, 1)
        x1 = jx / P**n
        k1 = make_u(K.zero, K(0, -x1)) @ k
        stage1 = ("u", jx)
    if not membership(Subgroup("Kprime", n), k1):
        raise CosetReductionError(f"stage 1 left K' for {k!r}")
    # stage 2: K' -> K_n cap zeta K_n zeta^-1
    y = k1[0, 1] / k1[1, 1]
    yres = _res1(y, 0)
    yl = K(*yres)
    m = make_u(-yl, u_param(yl, 0)) @ k1
    x2 = (m[0, 2] / m[2, 2]).b
    jz = mod_pk(x2 * P ** (n - 1), p, 1)
    z = jz / P ** (n - 1)
    r2 = make_u(yl, u_param(yl, z))
    if not product_membership(reps.small, r2.inverse(), k1):
        raise CosetReductionError(f"stage 2 failed for {k!r}")
    stage2 = (yres, jz)
    key = ("t", yres, jz) if x1 is None else ("u", yres, stage1[1] + p * jz)
    idx = reps.index[key]
    r = reps.reps[idx]
    if not product_membership(reps.small, r.inverse(), k):
        raise CosetReductionError(f"final certificate failed for {k!r}")
    return Reduction(idx, r, stage1, stage2)


def coset_reduce_level(k: GroupElem, n: int, reps: CosetRepList | None = None) -> Reduction:
    """Find the listed r with r^-1 k in K_{n-1} cap Z_{n-1} K_n."""
    K = k.K
    p = K.p
    reps = reps or level_reps(n, K)
    if n < 2:
        raise ValueError("level reduction needs n >= 2")
    if not membership(Subgroup("K", n - 1), k):
        raise ValueError("element is not in K_{n-1}")
    P = Q(p)
    # stage 1: K_{n-1} -> K''
    if val_E(k[0, 0]) >= 1:
        stage1 = ("t",)
        k1 = make_tn(n - 1, K) @ k
    else:
        x = (k[2, 0] / k[0, 0]).b
        jx = mod_pk(x / P ** (n - 1), p, 1)
        x1 = jx * P ** (n - 1)
        k1 = make_uhat(K.zero, K(0, -x1)) @ k
        stage1 = ("u", jx)
    if not membership(Subgroup("Kdprime", n), k1):
        raise CosetReductionError(f"stage 1 left K'' for {k!r}")
    # stage 2: K'' -> K_{n-1} cap Z_{n-1} K_n
    y = k1[1, 0] / k1[0, 0]
    yres = _res1(y, n - 1)
    yl = K(*yres) * P ** (n - 1)
    r2 = make_uhat(yl, u_param(yl, 0))
    if not product_membership(reps.small, r2.inverse(), k1):
        raise CosetReductionError(f"stage 2 failed for {k!r}")
    key = ("t", yres) if stage1 == ("t",) else ("u", yres, stage1[1])
    idx = reps.index[key]
    r = reps.reps[idx]
    if not product_membership(reps.small, r.inverse(), k):
        raise CosetReductionError(f"final certificate failed for {k!r}")
    return Reduction(idx, r, stage1, (yres,))


def coset_reduce(k: GroupElem, reps: CosetRepList) -> Reduction:
    if reps.kind == "hecke":
        return coset_reduce_hecke(k, reps.n, reps)
    return coset_reduce_level(k, reps.n, reps)


def check_complete_randomized(kind: str, n: int, K: QuadField, trials: int,
                              rng: random.Random, length: int = 12) -> dict:
    """Reduce ``trials`` random ambient-group elements; failures are reported, not raised."""
    if trials < 1:
        raise ValueError("trials must be positive")
    t0 = time.perf_counter()
    reps = hecke_reps(n, K) if kind == "hecke" else level_reps(n, K)
    failures = []
    hit, stage1_hit, stage2_hit = set(), set(), set()
    for t in range(trials):
        k = random_element(reps.ambient, K, rng, length)
        try:
            red = coset_reduce(k, reps)
        except (CosetReductionError, KeyError, ValueError, ZeroDivisionError) as exc:
            failures.append({"trial": t, "error": str(exc)[:300]})
            continue
        hit.add(red.index)
        stage1_hit.add(red.stage1)
        stage2_hit.add(red.stage2)
    q = K.q
    stage2_total = q**3 if kind == "hecke" else q**2
    return {
        "kind": kind, "p": K.p, "n": n, "trials": trials,
        "failures": failures,
        "reps_hit": len(hit), "reps_total": len(reps),
        "stage1_hit": len(stage1_hit), "stage1_total": q + 1,
        "stage2_hit": len(stage2_hit), "stage2_total": stage2_total,
        "elapsed": time.perf_counter() - t0,
    }

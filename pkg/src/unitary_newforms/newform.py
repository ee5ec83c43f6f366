"""Newform Whittaker data as a coefficient sequence, and the local factors it determines.

The newform is recorded through c_i = W(zeta^i) (normalised by c_0 = 1) and the
companion sequence c'_i coming from the level-raised vector.  Everything
downstream is a rational function in X = q^{-2s}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .arithmetic import Q, is_prime
from .ratfunc import L_E, RationalFn, subst_one_minus_s


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


@dataclass(frozen=True)
class NewformParams:
    q: int
    N: int
    n_c: int
    lam: mpq

    def __post_init__(self):
        object.__setattr__(self, "lam", Q(self.lam))
        if not is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        if self.N < 2:
            raise ValueError("the conductor N must be at least 2")
        if not self.N > self.n_c:
            raise ValueError("the conductor N must exceed the central-character conductor")
        if self.n_c < 0:
            raise ValueError("the central-character conductor must be non-negative")


@dataclass
class CoefficientSeq:
    c: list
    cprime: list
    K: int = field(default=0)

    def __post_init__(self):
        if not self.K:
            self.K = len(self.c) - 1


def generate_c(params: NewformParams, K: int) -> CoefficientSeq:
    """c_0 = 1, q^4 c_1 = lam c_0, q^4 c_{i+1} = (lam + q^2) c_i; c'_i = -q^2 c_{i+1}."""
    if K < 1:
        raise ValueError("truncation order must be at least 1")
    q, lam = Q(params.q), params.lam
    c = [Q(1), lam / q**4]
    while len(c) < K + 2:
        c.append((lam + q**2) * c[-1] / q**4)
    cprime = [-(q**2) * c[i + 1] for i in range(K + 1)]
    return CoefficientSeq(c[: K + 1], cprime, K)


def check_hecke_relation(seq: CoefficientSeq, params: NewformParams) -> bool:
    """lam c_i = c'_{i-1} + q^4 c_{i+1} for 0 <= i < K, with c'_{-1} = 0."""
    q, lam = Q(params.q), params.lam
    for i in range(min(seq.K, len(seq.c) - 1)):
        prev = seq.cprime[i - 1] if i >= 1 else 0
        if lam * seq.c[i] != prev + q**4 * seq.c[i + 1]:
            return False
    return True


def zeta_W_series(seq: CoefficientSeq, params: NewformParams, K: int | None = None) -> RationalFn:
    """Truncation sum_{i <= K} c_i q^{2i} X^i of Z(s, W)."""
    K = seq.K if K is None else min(K, seq.K)
    q = Q(params.q)
    return RationalFn.poly([seq.c[i] * q ** (2 * i) for i in range(K + 1)], params.q)


def zeta_W_closed(params: NewformParams) -> RationalFn:
    q = Q(params.q)
    X = RationalFn.X(params.q)
    return (1 - X) / (1 - ((params.lam + q**2) / q**2) * X)


def zeta_W_Phi(params: NewformParams) -> RationalFn:
    return zeta_W_closed(params) * L_E(params.q)


def functional_eq_lhs(params: NewformParams) -> RationalFn:
    """q^N X^N times Z(1 - s, W, Phi_N)."""
    return RationalFn.monomial(Q(params.q) ** params.N, params.N, params.q) * subst_one_minus_s(zeta_W_Phi(params))


def gamma_epsilon(params: NewformParams, L: RationalFn):
    Z = zeta_W_Phi(params)
    if Z.is_zero():
        raise ZeroDivisionError("zeta integral vanishes identically")
    if L.is_zero():
        raise ZeroDivisionError("L-factor is zero")
    gamma = functional_eq_lhs(params) / Z
    epsilon = gamma * L / subst_one_minus_s(L)
    return gamma, epsilon


def monomial_exponent(eps: RationalFn):
    """n when eps = +-q^n X^n, else None."""
    form = eps.monomial_form()
    if form is None:
        return None
    c, k = form
    return k if abs(Q(c)) == Q(eps.q) ** k else None


def verify_monomial(eps: RationalFn) -> bool:
    return monomial_exponent(eps) is not None


INCOMPATIBLE = "incompatible with supercuspidal"


def supercuspidal_classify(params: NewformParams) -> dict:
    """Pick the L-factor candidate (1 or L_E) consistent with a supercuspidal newform.

    A candidate survives when Z(s, W, Phi_N) / L is a Laurent polynomial and the
    resulting epsilon factor is a monomial.  When Z(s, W) itself is not a
    Laurent polynomial no candidate can work.
    """
    Z_W = zeta_W_closed(params)
    Z = zeta_W_Phi(params)
    out = {"Z_W": Z_W, "Z": Z, "candidates": {}}
    if not Z_W.is_laurent_polynomial():
        out.update(status=INCOMPATIBLE, L=None, gamma=None, epsilon=None)
        return out
    survivors = []
    for name, L in (("1", RationalFn.const(1, params.q)), ("L_E", L_E(params.q))):
        gamma, eps = gamma_epsilon(params, L)
        ok = (Z / L).is_laurent_polynomial() and verify_monomial(eps)
        out["candidates"][name] = {"L": L, "epsilon": eps, "accepted": ok}
        if ok:
            survivors.append((L, gamma, eps))
    if len(survivors) != 1:
        out.update(status=INCOMPATIBLE, L=None, gamma=None, epsilon=None)
        return out
    L, gamma, eps = survivors[0]
    out.update(status="supercuspidal", L=L, gamma=gamma, epsilon=eps)
    return out


def newform_record(params: NewformParams) -> dict:
    """Flat record for tables: strings for the rational functions."""
    cls = supercuspidal_classify(params)
    eps = cls["epsilon"]
    n = monomial_exponent(eps) if eps is not None else None
    return {
        "q": params.q,
        "N": params.N,
        "n_pi": params.n_c,
        "lambda": str(params.lam),
        "Z_W": str(cls["Z_W"]),
        "L": str(cls["L"]) if cls["L"] is not None else None,
        "gamma": str(cls["gamma"]) if cls["gamma"] is not None else None,
        "epsilon": str(eps) if eps is not None else None,
        "monomial_exponent": n,
        "conjecture_holds": cls["L"] is not None and cls["Z"] == cls["L"],
        "status": cls["status"],
    }

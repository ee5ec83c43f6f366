"""Schwartz functions on F x F built from shifted rectangular lattices.

A :class:`LatticeTerm` is the function

    (x, y) -> coeff * e(gamma) * psi_F(alpha x + beta y) * [x in c + p^a] * [y in d + p^b]

where ``e(gamma)`` is a constant p-power root of unity.  Finite sums of such
terms are closed under both Fourier transforms and under monomial GL_2(F)
translation.  Zeta integrals along the line (0, r) g are evaluated exactly as
rational functions of X = q^{-2s}.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .arithmetic import INF, PhaseExponent, Q, mod_pk, psi_F, reduce_phase_sum, val_F
from .group import Mat2, decompose_H
from .ratfunc import RationalFn

_ZERO_PHASE = PhaseExponent(Fraction(0))


@dataclass(frozen=True)
class LatticeTerm:
    coeff: object
    alpha: object = 0
    beta: object = 0
    c: object = 0
    d: object = 0
    a: int = 0
    b: int = 0
    gamma: PhaseExponent = _ZERO_PHASE

    def __post_init__(self):
        for name in ("coeff", "alpha", "beta", "c", "d"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))


def _canonical(t: LatticeTerm, p: int) -> LatticeTerm:
    """Shift reduced to 0 when it lies in the lattice; phase moved into gamma.

    On the support, psi(alpha x) with x = c + u equals psi(alpha c) psi(alpha u),
    so nothing is changed as a function.
    """
    c = t.c if t.c and val_F(t.c, p) < t.a else Q(0)
    d = t.d if t.d and val_F(t.d, p) < t.b else Q(0)
    return replace(t, c=c, d=d)


class LatticeFn:
    """Finite sum of lattice terms over F = Q_p (rational model)."""

    def __init__(self, terms, p: int):
        self.p = p
        self.terms = tuple(_canonical(t, p) for t in terms if t.coeff != 0)

    @classmethod
    def char(cls, p: int, a: int = 0, b: int = 0, c=0, d=0, coeff=1) -> LatticeFn:
        return cls([LatticeTerm(coeff, c=c, d=d, a=a, b=b)], p)

    def __add__(self, other: LatticeFn) -> LatticeFn:
        return LatticeFn(self.terms + other.terms, self.p)

    def __neg__(self) -> LatticeFn:
        return self.scale(-1)

    def __sub__(self, other: LatticeFn) -> LatticeFn:
        return self + (-other)

    def scale(self, k) -> LatticeFn:
        return LatticeFn([replace(t, coeff=t.coeff * Q(k)) for t in self.terms], self.p)

    def __eq__(self, other):
        if not isinstance(other, LatticeFn) or other.p != self.p:
            return NotImplemented
        return functions_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"LatticeFn(p={self.p}, terms={list(self.terms)})"

    def evaluate(self, x, y) -> dict:
        """Exact value at (x, y) as a reduced phase sum {PhaseExponent: rational}."""
        x, y = Q(x), Q(y)
        acc: dict = defaultdict(lambda: Q(0))
        for t in self.terms:
            if val_F(x - t.c, self.p) >= t.a and val_F(y - t.d, self.p) >= t.b:
                acc[t.gamma + psi_F(t.alpha * x + t.beta * y, self.p)] += t.coeff
        return reduce_phase_sum(dict(acc), self.p)

    def value(self, x, y) -> complex:
        return sum(complex(c) * ph.value() for ph, c in self.evaluate(x, y).items())


def phi_n(n: int, p: int) -> LatticeFn:
    """Characteristic function of p^n + o."""
    return LatticeFn.char(p, a=n, b=0)


# ---------------------------------------------------------------- transforms

def _hat_term(t: LatticeTerm, p: int) -> LatticeTerm:
    q = Q(p)
    return LatticeTerm(
        t.coeff * q ** (-t.a - t.b),
        alpha=-t.d, beta=t.c,
        c=t.beta, d=-t.alpha,
        a=-t.b, b=-t.a,
        gamma=t.gamma + psi_F(t.alpha * t.c + t.beta * t.d, p),
    )


def _star_term(t: LatticeTerm, p: int) -> LatticeTerm:
    q = Q(p)
    return LatticeTerm(
        t.coeff * q ** (-t.a - t.b),
        alpha=t.d, beta=t.c,
        c=-t.beta, d=-t.alpha,
        a=-t.b, b=-t.a,
        gamma=t.gamma + psi_F(t.alpha * t.c + t.beta * t.d, p),
    )


def fourier_hat(phi: LatticeFn) -> LatticeFn:
    """Transform against psi(y u - x v)."""
    return LatticeFn([_hat_term(t, phi.p) for t in phi.terms], phi.p)


def fourier_star(phi: LatticeFn) -> LatticeFn:
    """Transform against psi(y u + x v)."""
    return LatticeFn([_star_term(t, phi.p) for t in phi.terms], phi.p)


def gl2_act(g, phi: LatticeFn) -> LatticeFn:
    """(g Phi)(x, y) = Phi((x, y) g) for diagonal or antidiagonal g over F.

    ``g`` is ``((g11, g12), (g21, g22))`` with rational entries.
    """
    (g11, g12), (g21, g22) = ((Q(e) for e in row) for row in g)
    p = phi.p
    out = []
    if g12 == 0 and g21 == 0 and g11 and g22:
        # (x, y) g = (g11 x, g22 y)
        for t in phi.terms:
            out.append(replace(t, alpha=t.alpha * g11, beta=t.beta * g22,
                               c=t.c / g11, d=t.d / g22,
                               a=t.a - val_F(g11, p), b=t.b - val_F(g22, p)))
    elif g11 == 0 and g22 == 0 and g12 and g21:
        # (x, y) g = (g21 y, g12 x)
        for t in phi.terms:
            out.append(replace(t, alpha=t.beta * g12, beta=t.alpha * g21,
                               c=t.d / g12, d=t.c / g21,
                               a=t.b - val_F(g12, p), b=t.a - val_F(g21, p)))
    else:
        raise ValueError("gl2_act supports only invertible diagonal or antidiagonal matrices")
    return LatticeFn(out, p)


# ---------------------------------------------------------------- equality

def _val_or_inf(x, p):
    return val_F(x, p) if x else INF


def _grid_bounds(terms, p, coord: str):
    """(M, N): the coordinate's support lies in p^-M and everything is p^N-periodic."""
    lo, fine = 0, 0
    for t in terms:
        shift, scale, freq = (t.c, t.a, t.alpha) if coord == "x" else (t.d, t.b, t.beta)
        lo = max(lo, -min(_val_or_inf(shift, p), scale))
        fine = max(fine, scale)
        if freq:
            fine = max(fine, -val_F(freq, p))
    return lo + 1, fine + 1


def _phase_exponent_power(g: PhaseExponent, p: int) -> int:
    d, k = g.t.denominator, 0
    while d % p == 0:
        d //= p
        k += 1
    return k


def _axis_data(t, p, coord, M, N, L):
    """Support mask and phase index (in units of p^-L) over the axis grid X / p^M."""
    shift, scale, freq = (t.c, t.a, t.alpha) if coord == "x" else (t.d, t.b, t.beta)
    size = p ** (M + N)
    grid = np.arange(size, dtype=np.int64)
    modulus = p ** (scale + M)
    if modulus >= size:
        # the support is a single residue of the grid (or nothing)
        C = mod_pk(shift * Q(p) ** M, p, M + N) if shift else 0
        mask = grid == C
    else:
        C = mod_pk(shift * Q(p) ** M, p, scale + M) if shift else 0
        mask = (grid - C) % modulus == 0
    A = mod_pk(freq * Q(p) ** (L - M), p, L) if freq else 0
    phase = (grid * A) % (p**L)
    return np.nonzero(mask)[0], phase


def grid_parameters(F: LatticeFn, G: LatticeFn | None = None) -> dict:
    terms = F.terms + (G.terms if G is not None else ())
    p = F.p
    Mx, Nx = _grid_bounds(terms, p, "x")
    My, Ny = _grid_bounds(terms, p, "y")
    L = max([Mx + Nx, My + Ny] + [_phase_exponent_power(t.gamma, p) for t in terms])
    return {"Mx": Mx, "Nx": Nx, "My": My, "Ny": Ny, "L": L}


def find_difference(F: LatticeFn, G: LatticeFn):
    """A grid point where F and G differ, or None when they are equal everywhere.

    Both functions are constant on cosets of the fine lattice and vanish outside
    the coarse one, so the finite grid decides equality.  Values are compared
    exactly in Q(zeta_{p^L}).
    """
    p = F.p
    prm = grid_parameters(F, G)
    Mx, Nx, My, Ny, L = prm["Mx"], prm["Nx"], prm["My"], prm["Ny"], prm["L"]
    PL = p**L
    ny = p ** (My + Ny)
    keys, weights = [], []
    signed = [(t, 1) for t in F.terms] + [(t, -1) for t in G.terms]
    for t, sign in signed:
        xs, phx = _axis_data(t, p, "x", Mx, Nx, L)
        ys, phy = _axis_data(t, p, "y", My, Ny, L)
        if not len(xs) or not len(ys):
            continue
        g0 = int(t.gamma.t * PL)
        ph = (g0 + phx[xs][:, None] + phy[ys][None, :]) % PL
        pt = xs[:, None] * ny + ys[None, :]
        keys.append((pt * PL + ph).ravel())
        weights.append((sign, t.coeff, len(xs) * len(ys)))
    if not keys:
        return None
    allkeys = np.concatenate(keys)
    uniq, inv = np.unique(allkeys, return_inverse=True)
    # exact accumulation: coefficients per term are rationals, so sum per distinct term coefficient
    coeffs = sorted({w[1] * w[0] for w in weights})
    cidx = {c: i for i, c in enumerate(coeffs)}
    term_of = np.concatenate([np.full(n, cidx[s * c], dtype=np.int64) for s, c, n in weights])
    counts = np.zeros((len(uniq), len(coeffs)), dtype=np.int64)
    np.add.at(counts, (inv, term_of), 1)
    coeff_arr = list(coeffs)
    per_point: dict = defaultdict(dict)
    for row in np.nonzero(counts.any(axis=1))[0]:
        total = sum((int(k) * coeff_arr[j] for j, k in enumerate(counts[row]) if k), Q(0))
        if total != 0:
            key = int(uniq[row])
            per_point[key // PL][PhaseExponent(Fraction(key % PL, PL))] = total
    for pt, vec in sorted(per_point.items()):
        if reduce_phase_sum(vec, p):
            X, Y = divmod(pt, ny)
            return (Q(X) / Q(p) ** Mx, Q(Y) / Q(p) ** My)
    return None


def functions_equal(F: LatticeFn, G: LatticeFn) -> bool:
    return find_difference(F, G) is None


# ---------------------------------------------------------------- zeta integrals

def _line_condition(coef, shift, scale, p):
    """{r : r * coef in shift + p^scale} as (True,), (False,) or a coset (e, m)."""
    if coef == 0:
        return (not shift or val_F(shift, p) >= scale,)
    return (shift / coef, scale - val_F(coef, p))


def _intersect(c1, c2, p):
    if len(c1) == 1:
        return c2 if c1[0] else (False,)
    if len(c2) == 1:
        return c1 if c2[0] else (False,)
    (e1, m1), (e2, m2) = c1, c2
    if m1 > m2:
        (e1, m1), (e2, m2) = (e2, m2), (e1, m1)
    if e2 != e1 and val_F(e2 - e1, p) < m1:
        return (False,)
    return (e2, m2)


def z_integral_phased(g, phi: LatticeFn) -> dict:
    """z(s, g, Phi) as {PhaseExponent: RationalFn}, reduced exactly."""
    (_, _), (g21, g22) = ((Q(e) for e in row) for row in g)
    if g21 == 0 and g22 == 0:
        raise ValueError("bottom row of g vanishes")
    p = phi.p
    q = Q(p)
    X = RationalFn.X(p)
    acc: dict = {}

    def add(ph, fn):
        acc[ph] = acc[ph] + fn if ph in acc else fn

    for t in phi.terms:
        region = _intersect(_line_condition(g21, t.c, t.a, p), _line_condition(g22, t.d, t.b, p), p)
        if len(region) == 1:
            if region[0]:
                raise ValueError("support contains the whole line; integral diverges")
            continue
        e, m = region
        theta = t.alpha * g21 + t.beta * g22
        vt = val_F(theta, p) if theta else None
        if not e or val_F(e, p) >= m:
            # region is p^m: full shells val r = v >= m
            start = m if vt is None else max(m, -vt)
            fn = RationalFn.monomial(1, start, p) / (1 - X)
            if vt is not None and m <= -vt - 1:
                fn = fn + RationalFn.monomial(Q(-1) / (q - 1), -vt - 1, p)
            add(t.gamma, fn * t.coeff)
        else:
            v = val_F(e, p)
            if vt is not None and vt < -m:
                continue
            weight = t.coeff * q / (q - 1) * q ** (v - m)
            add(t.gamma + psi_F(theta * e, p), RationalFn.monomial(weight, v, p))
    return reduce_phase_sum(acc, p)


def z_integral(g, phi: LatticeFn) -> RationalFn:
    """z(s, g, Phi) = int (g Phi)(0, r) |r|_E^s d^x r as a rational function of X."""
    red = z_integral_phased(g, phi)
    if not red:
        return RationalFn.const(0, phi.p)
    if len(red) == 1 and next(iter(red)).is_trivial():
        return next(iter(red.values()))
    raise ValueError("zeta integral is not rational; use z_integral_phased")


def _mat_over_F(m: Mat2):
    if not m.is_over_F():
        raise ValueError("matrix is not over F")
    return ((m.a.a, m.b.a), (m.c.a, m.d.a))


def f_function(h: Mat2, phi: LatticeFn) -> RationalFn:
    """f(s, h, Phi) = |b|_E^s z(s, h1, Phi) with h = t(b) d(sqrt eps) h1 d(sqrt eps)^-1."""
    b, h1 = decompose_H(h)
    return RationalFn.monomial(1, b.val(), phi.p) * z_integral(_mat_over_F(h1), phi)


# ---------------------------------------------------------------- sampling

def random_term(p: int, rng: random.Random, spread: int = 1) -> LatticeTerm:
    def rnd(lo):
        if rng.random() < 0.3:
            return Q(0)
        return Q(rng.randrange(1, p**2)) * Q(p) ** rng.randint(lo, spread)

    coeff = Q(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, p]))
    gamma = psi_F(Q(rng.randrange(p**2)) / p**2, p) if rng.random() < 0.3 else _ZERO_PHASE
    return LatticeTerm(coeff, alpha=rnd(-spread), beta=rnd(-spread), c=rnd(-spread), d=rnd(-spread),
                       a=rng.randint(-spread, spread), b=rng.randint(-spread, spread), gamma=gamma)


def random_lattice_fn(p: int, rng: random.Random, max_terms: int = 3, spread: int = 1) -> LatticeFn:
    return LatticeFn([random_term(p, rng, spread) for _ in range(rng.randint(1, max_terms))], p)

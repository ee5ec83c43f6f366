"""Exact arithmetic in F = Q (with a p-adic valuation) and E = F(sqrt(eps)).

Elements of F are plain ``gmpy2.mpq`` values.  Elements of the unramified
quadratic extension are :class:`QuadExtElem` pairs ``a + b*sqrt(eps)``.
Values of the additive characters are recorded as :class:`PhaseExponent`
(``t`` standing for ``exp(2*pi*i*t)``), and finite sums of such values are
decided exactly by :func:`reduce_phase_sum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq, mpz, remove

INF = math.inf

LocalRational = type(mpq(0))


def Q(x, den=None) -> mpq:
    """Coerce ``x`` (int, Fraction, mpq, str) to an exact rational."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, LocalRational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def val_F(x, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = Q(x)
    if x == 0:
        return INF
    return remove(x.numerator, p)[1] - remove(x.denominator, p)[1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for e in range(2, p):
        if pow(e, (p - 1) // 2, p) == p - 1:
            return e
    raise ValueError(f"no quadratic non-residue mod {p}")


def mod_pk(x, p: int, k: int) -> int:
    """Canonical integer in [0, p^k) congruent to the p-integral rational x."""
    x = Q(x)
    m = p**k
    num, den = int(x.numerator), int(x.denominator)
    if den % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return num * pow(den, -1, m) % m


class QuadField:
    """The unramified quadratic extension E = F(sqrt(eps)) of F, with F modelled by Q.

    ``eps`` is the smallest positive quadratic non-residue mod ``p``; ``p`` is
    both the residue cardinality ``q`` of F and the common uniformizer.
    """

    def __init__(self, p: int):
        if p % 2 == 0 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.q = p
        self.eps = smallest_nonresidue(p)

    def __repr__(self):
        return f"QuadField(p={self.p}, eps={self.eps})"

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.p == self.p

    def __hash__(self):
        return hash(("QuadField", self.p))

    def __call__(self, a=0, b=0) -> QuadExtElem:
        return QuadExtElem(Q(a), Q(b), self)

    @property
    def zero(self) -> QuadExtElem:
        return QuadExtElem(Q(0), Q(0), self)

    @property
    def one(self) -> QuadExtElem:
        return QuadExtElem(Q(1), Q(0), self)

    @property
    def sqrt_eps(self) -> QuadExtElem:
        return QuadExtElem(Q(0), Q(1), self)

    @property
    def uniformizer(self) -> QuadExtElem:
        return QuadExtElem(Q(self.p), Q(0), self)

    def residue_reps(self, lo: int = 0, hi: int = 1):
        """Canonical lifts of p_E^lo / p_E^hi: p^lo * (i + j*sqrt(eps)), 0 <= i, j < p^(hi-lo)."""
        scale = Q(self.p) ** lo
        m = self.p ** (hi - lo)
        for i in range(m):
            for j in range(m):
                yield QuadExtElem(i * scale, j * scale, self)

    def base_reps(self, lo: int, hi: int):
        """Canonical lifts of p_F^lo / p_F^hi as rationals j * p^lo."""
        scale = Q(self.p) ** lo
        return [j * scale for j in range(self.p ** (hi - lo))]


class QuadExtElem:
    """Exact element a + b*sqrt(eps) of E."""

    __slots__ = ("a", "b", "K")

    def __init__(self, a, b, K: QuadField):
        self.a = a
        self.b = b
        self.K = K

    def _coerce(self, other) -> QuadExtElem:
        if isinstance(other, QuadExtElem):
            return other
        return QuadExtElem(Q(other), Q(0), self.K)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.K)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a - o.a, self.b - o.b, self.K)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.K)

    def __mul__(self, other):
        if not isinstance(other, QuadExtElem):
            c = Q(other)
            return QuadExtElem(self.a * c, self.b * c, self.K)
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadExtElem(a * c + self.K.eps * b * d, a * d + b * c, self.K)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.K.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExtElem):
            return self.a == other.a and self.b == other.b
        try:
            return self.b == 0 and self.a == Q(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadExtElem({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.K.eps})"
        return f"{self.a} + {self.b}*sqrt({self.K.eps})"

    def conj(self) -> QuadExtElem:
        return QuadExtElem(self.a, -self.b, self.K)

    def norm(self) -> mpq:
        return self.a * self.a - self.K.eps * self.b * self.b

    def trace(self) -> mpq:
        return 2 * self.a

    def inverse(self) -> QuadExtElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in E")
        return QuadExtElem(self.a / n, -self.b / n, self.K)

    def is_real(self) -> bool:
        return self.b == 0

    def val(self):
        return val_E(self)


def val_E(x: QuadExtElem):
    """Valuation on E normalised by val_E(p) = 1; ``math.inf`` for zero."""
    p = x.K.p
    return min(val_F(x.a, p), val_F(x.b, p))


@dataclass(frozen=True)
class ResidueElem:
    """Image of an element of o_E in o_E / p_E^m, as (a mod p^m, b mod p^m)."""

    a_mod: int
    b_mod: int
    m: int
    p: int

    @classmethod
    def reduce(cls, x: QuadExtElem, m: int) -> ResidueElem:
        if val_E(x) < 0:
            raise ValueError(f"{x} is not integral")
        p = x.K.p
        return cls(mod_pk(x.a, p, m), mod_pk(x.b, p, m), m, p)

    def lift(self, K: QuadField) -> QuadExtElem:
        return K(self.a_mod, self.b_mod)

    def __add__(self, other: ResidueElem) -> ResidueElem:
        mod = self.p**self.m
        return ResidueElem((self.a_mod + other.a_mod) % mod, (self.b_mod + other.b_mod) % mod, self.m, self.p)

    def mul(self, other: ResidueElem, eps: int) -> ResidueElem:
        mod = self.p**self.m
        a, b, c, d = self.a_mod, self.b_mod, other.a_mod, other.b_mod
        return ResidueElem((a * c + eps * b * d) % mod, (a * d + b * c) % mod, self.m, self.p)


@dataclass(frozen=True, order=True)
class PhaseExponent:
    """The root of unity exp(2*pi*i*t), stored as t in [0, 1)."""

    t: Fraction

    def __post_init__(self):
        t = Fraction(self.t)
        object.__setattr__(self, "t", t - math.floor(t))

    def __add__(self, other: PhaseExponent) -> PhaseExponent:
        return PhaseExponent(self.t + other.t)

    def __neg__(self) -> PhaseExponent:
        return PhaseExponent(-self.t)

    def __sub__(self, other: PhaseExponent) -> PhaseExponent:
        return PhaseExponent(self.t - other.t)

    def is_trivial(self) -> bool:
        return self.t == 0

    def value(self) -> complex:
        return complex(math.cos(2 * math.pi * self.t), math.sin(2 * math.pi * self.t))


def _to_fraction(x) -> Fraction:
    x = Q(x)
    return Fraction(int(x.numerator), int(x.denominator))


def psi_F(x, p: int) -> PhaseExponent:
    """Additive character of F with conductor o_F.

    Returns the p-primary partial-fraction part of ``x`` modulo 1: the unique
    rational t with p-power denominator such that x - t is p-integral.
    """
    x = Q(x)
    if x == 0:
        return PhaseExponent(Fraction(0))
    den = mpz(x.denominator)
    rest, k = remove(den, p)
    if k == 0:
        return PhaseExponent(Fraction(0))
    pk = p**k
    num = int(x.numerator) * pow(int(rest), -1, pk) % pk
    return PhaseExponent(Fraction(num, pk))


def psi_E(x: QuadExtElem) -> PhaseExponent:
    """psi_F composed with the trace E -> F; conductor o_E."""
    return psi_F(x.trace(), x.K.p)


def _p_power_exponent(t: Fraction, p: int) -> int:
    d = t.denominator
    k = 0
    while d % p == 0:
        d //= p
        k += 1
    if d != 1:
        raise ValueError(f"phase {t} is not a p-power root of unity for p={p}")
    return k


def reduce_phase_sum(terms: Mapping[PhaseExponent, object] | Iterable, p: int) -> dict:
    """Exact canonical form of sum(coeff * exp(2*pi*i*t)) over p-power roots of unity.

    ``terms`` is a mapping (or iterable of pairs) ``PhaseExponent -> coeff``;
    coefficients may be any additive type supporting ``+``, ``-`` and ``== 0``.
    The result uses the basis zeta^j, 0 <= j < phi(p^L), of Q(zeta_{p^L}); it is
    empty exactly when the sum vanishes.
    """
    items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
    if not items:
        return {}
    L = max(_p_power_exponent(ph.t, p) for ph, _ in items)
    N = p**L
    vec: dict[int, object] = {}
    for ph, c in items:
        j = int(ph.t * N)
        vec[j] = vec[j] + c if j in vec else c
    if L > 0:
        block = p ** (L - 1)
        top = (p - 1) * block
        # zeta^top = -(1 + zeta^block + ... + zeta^((p-2)*block))
        for j in range(N - 1, top - 1, -1):
            c = vec.pop(j, None)
            if c is None:
                continue
            base = j - top
            for r in range(p - 1):
                k = base + r * block
                vec[k] = vec[k] - c if k in vec else -c
    return {PhaseExponent(Fraction(j, N)): c for j, c in sorted(vec.items()) if not c == 0}


def phase_sum_value(terms, p: int):
    """Exact value of a phase sum when it is rational; raises otherwise."""
    red = reduce_phase_sum(terms, p)
    if not red:
        return 0
    if len(red) == 1 and next(iter(red)).is_trivial():
        return next(iter(red.values()))
    raise ValueError("phase sum is not rational")


def character_sum(i: int, p: int) -> int:
    """Closed form of the sum of psi_E over p_E^i / p_E^(i+1): q^2 if i >= 0, else 0."""
    return p * p if i >= 0 else 0


def character_sum_explicit(i: int, K: QuadField):
    """The same sum computed from coset representatives.

    For i < -1 psi_E is not constant on cosets of p_E^(i+1); the sum is then
    read as q^(2(i+1)) times the (well defined) sum over p_E^i / o_E.
    """
    p = K.p
    hi = i + 1 if i >= -1 else 0
    terms: dict[PhaseExponent, int] = {}
    for a in K.residue_reps(i, hi):
        ph = psi_E(a)
        terms[ph] = terms.get(ph, 0) + 1
    total = phase_sum_value(terms, p)
    if i < -1:
        total = Q(total) * Q(p) ** (2 * (i + 1))
    return total

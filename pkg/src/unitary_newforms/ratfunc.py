"""Rational functions over Q in X = q^(-2s).

A :class:`RationalFn` is stored as X^shift * N(X) / D(X) with N(0) != 0,
D(0) = 1 and gcd(N, D) = 1, so equality is equality of canonical forms.
"""

from __future__ import annotations

import ast
from typing import Iterable, Sequence

from gmpy2 import mpq

from .arithmetic import Q

Poly = tuple  # coefficients, constant term first


def _trim(c: Iterable) -> Poly:
    c = [Q(x) for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def p_scale(a: Poly, c) -> Poly:
    return _trim(x * c for x in a)


def p_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Q(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return _trim(q), _trim(r)


def p_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, p_divmod(a, b)[1]
    if not a:
        return ()
    return p_scale(a, 1 / a[-1])


def _x_order(a: Poly) -> int:
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return k


def _x_mono(k: int) -> str:
    return "X" if k == 1 else f"X^{k}"


def _q_mono(k: int) -> str:
    return f"q^{{{-2 * k}s}}"


def poly_str(a: Poly, mono=_x_mono) -> str:
    if not a:
        return "0"
    parts = []
    for k, c in enumerate(a):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            body = mono(k) if mag == 1 else f"{mag}*{mono(k)}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class RationalFn:
    """Element of Q(X), X standing for q^(-2s)."""

    __slots__ = ("num", "den", "shift", "q")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), shift: int = 0, q: int | None = None):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.q = q
        if not num:
            self.num, self.den, self.shift = (), (Q(1),), 0
            return
        kn, kd = _x_order(num), _x_order(den)
        num, den = num[kn:], den[kd:]
        shift += kn - kd
        g = p_gcd(num, den)
        if len(g) > 1:
            num, den = p_divmod(num, g)[0], p_divmod(den, g)[0]
        c = den[0]
        self.num = p_scale(num, 1 / c)
        self.den = p_scale(den, 1 / c)
        self.shift = shift

    # -- constructors
    @classmethod
    def const(cls, c, q=None) -> RationalFn:
        return cls((Q(c),), (1,), 0, q)

    @classmethod
    def monomial(cls, c, k: int, q=None) -> RationalFn:
        return cls((Q(c),), (1,), k, q)

    @classmethod
    def X(cls, q=None) -> RationalFn:
        return cls.monomial(1, 1, q)

    @classmethod
    def poly(cls, coeffs: Sequence, q=None, shift: int = 0) -> RationalFn:
        return cls(coeffs, (1,), shift, q)

    # -- arithmetic
    def _q(self, other: RationalFn):
        if self.q is not None and other.q is not None and self.q != other.q:
            raise ValueError(f"mismatched q: {self.q} vs {other.q}")
        return self.q if self.q is not None else other.q

    def _coerce(self, other) -> RationalFn:
        if isinstance(other, RationalFn):
            return other
        return RationalFn.const(other, self.q)

    def _parts(self, extra: int = 0) -> tuple[Poly, Poly]:
        """(numerator, denominator) with X^(shift - extra) moved into the polynomials."""
        k = self.shift - extra
        n, d = self.num, self.den
        if k >= 0:
            n = (Q(0),) * k + n
        else:
            d = (Q(0),) * (-k) + d
        return n, d

    def __add__(self, other):
        o = self._coerce(other)
        if self.is_zero():
            return RationalFn(o.num, o.den, o.shift, self._q(o))
        if o.is_zero():
            return RationalFn(self.num, self.den, self.shift, self._q(o))
        base = min(self.shift, o.shift)
        a, b = self._parts(base), o._parts(base)
        num = p_add(p_mul(a[0], b[1]), p_mul(b[0], a[1]))
        return RationalFn(num, p_mul(a[1], b[1]), base, self._q(o))

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(p_neg(self.num), self.den, self.shift, self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFn(p_mul(self.num, o.num), p_mul(self.den, o.den), self.shift + o.shift, self._q(o))

    __rmul__ = __mul__

    def inverse(self) -> RationalFn:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFn(self.den, self.num, -self.shift, self.q)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFn.const(1, self.q)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = RationalFn.const(other, self.q)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den and self.shift == other.shift

    def __hash__(self):
        return hash((self.num, self.den, self.shift))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return not self.is_zero()

    # -- structure
    def is_laurent_polynomial(self) -> bool:
        return self.den == (1,)

    def monomial_form(self):
        """(c, k) if self = c X^k, else None."""
        if self.is_laurent_polynomial() and len(self.num) == 1:
            return self.num[0], self.shift
        return None

    def subst_one_minus_s(self) -> RationalFn:
        """s -> 1 - s, i.e. X -> q^-2 / X."""
        if self.q is None:
            raise ValueError("subst_one_minus_s needs q")
        c = Q(1) / (self.q * self.q)
        if self.is_zero():
            return self
        dn, dd = len(self.num) - 1, len(self.den) - 1
        n_rev = tuple(self.num[i] * c**i for i in range(dn, -1, -1))
        d_rev = tuple(self.den[i] * c**i for i in range(dd, -1, -1))
        k = self.shift
        return RationalFn(p_scale(n_rev, c**k), d_rev, -k - dn + dd, self.q)

    def series_expand(self, K: int) -> list:
        """Taylor coefficients of X^0 .. X^K."""
        if self.shift < 0:
            raise ValueError("pole at X = 0")
        out = [Q(0)] * (K + 1)
        m = K - self.shift
        if m < 0:
            return out
        # num / den as a power series, den(0) = 1
        s = [Q(0)] * (m + 1)
        for i in range(m + 1):
            acc = self.num[i] if i < len(self.num) else Q(0)
            for j in range(1, min(i, len(self.den) - 1) + 1):
                acc -= self.den[j] * s[i - j]
            s[i] = acc
        for i in range(m + 1):
            out[i + self.shift] = s[i]
        return out

    # -- rendering
    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        return self.to_str()

    def to_str(self, mono=_x_mono) -> str:
        if self.is_zero():
            return "0"
        if self.shift >= 0:
            n = (Q(0),) * self.shift + self.num
            prefix = ""
        else:
            n = self.num
            prefix = f"{mono(self.shift)}*"
        ns = poly_str(n, mono)
        nterms = len([c for c in n if c])
        if prefix and nterms == 1:
            c = n[0]
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            ns = ("-" if c < 0 else "") + mag + mono(self.shift)
            prefix = ""
        if self.den == (1,):
            return f"{prefix}({ns})" if prefix and nterms > 1 else prefix + ns
        ns = f"({ns})" if nterms > 1 or prefix else ns
        return f"{prefix}{ns}/({poly_str(self.den, mono)})"

    def to_qs(self) -> str:
        """Render in q^{-2s} notation."""
        return self.to_str(_q_mono)

    @classmethod
    def parse(cls, text: str, q: int | None = None) -> RationalFn:
        """Inverse of :meth:`to_str` (X-notation): + - * / ^, rationals, parentheses."""
        tree = ast.parse(text.replace("^", "**"), mode="eval")

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return cls.const(node.value, q)
            if isinstance(node, ast.Name) and node.id == "X":
                return cls.X(q)
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                v = ev(node.operand)
                return -v if isinstance(node.op, ast.USub) else v
            if isinstance(node, ast.BinOp):
                if isinstance(node.op, ast.Pow):
                    e = node.right
                    sign = 1
                    if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                        sign, e = -1, e.operand
                    if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                        raise ValueError("exponent must be an integer")
                    return ev(node.left) ** (sign * e.value)
                a, b = ev(node.left), ev(node.right)
                ops = {ast.Add: a.__add__, ast.Sub: a.__sub__, ast.Mult: a.__mul__, ast.Div: a.__truediv__}
                for t, f in ops.items():
                    if isinstance(node.op, t):
                        return f(b)
            raise ValueError(f"cannot parse {text!r}")

        return ev(tree)


def L_E(q: int) -> RationalFn:
    """L-factor of the trivial character of E^x: 1 / (1 - q^-2s)."""
    return RationalFn((1,), (1, -1), 0, q)


def subst_one_minus_s(R: RationalFn) -> RationalFn:
    return R.subst_one_minus_s()


def is_laurent_polynomial(R: RationalFn) -> bool:
    return R.is_laurent_polynomial()


def series_expand(R: RationalFn, K: int) -> list:
    return R.series_expand(K)


def gcd_generator(fns: Sequence[RationalFn]) -> RationalFn:
    """Normalised generator N/D (N(0) = D(0) = 1) of the Q[X, 1/X]-module spanned by ``fns``."""
    fns = list(fns)
    if not fns:
        raise ValueError("gcd_generator needs at least one function")
    if any(f.is_zero() for f in fns):
        raise ValueError("gcd_generator needs nonzero functions")
    g: Poly = ()
    lcm: Poly = (Q(1),)
    for f in fns:
        g = p_gcd(g, f.num) if g else p_scale(f.num, 1 / f.num[-1])
        lcm = p_divmod(p_mul(lcm, f.den), p_gcd(lcm, f.den))[0]
    q = next((f.q for f in fns if f.q is not None), None)
    out = RationalFn(g, lcm, 0, q)
    return RationalFn(p_scale(out.num, 1 / out.num[0]), out.den, 0, q)

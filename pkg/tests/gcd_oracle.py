"""Brute-force generator search for fractional ideals of Q[X, 1/X], via sympy row reduction."""

import sympy

from unitary_newforms.arithmetic import Q
from unitary_newforms.ratfunc import RationalFn

x = sympy.Symbol("x")


def _to_sympy(f: RationalFn):
    num = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x**i for i, c in enumerate(f.num))
    den = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x**i for i, c in enumerate(f.den))
    return num * x ** max(f.shift, 0), den * x ** max(-f.shift, 0)


def brute_force_generator(fns):
    """Minimal-degree element of the span of X^j * f_i * D, divided by D.

    D is the product of all denominators, so every f_i * D is a polynomial; the
    smallest-degree nonzero element of their span (shifts up to the largest
    degree suffice by Bezout) generates the polynomial ideal.
    """
    parts = [_to_sympy(f) for f in fns]
    D = sympy.prod([d for _, d in parts])
    polys = [sympy.Poly(sympy.cancel(n * D / d), x) for n, d in parts]
    # drop monomial factors: they are units in Q[X, 1/X]
    stripped = []
    for p in polys:
        coeffs = p.all_coeffs()[::-1]
        k = next(i for i, c in enumerate(coeffs) if c != 0)
        stripped.append(coeffs[k:])
    top = max(len(c) for c in stripped) - 1
    width = 2 * top + 1
    rows = []
    for coeffs in stripped:
        for j in range(top + 1):
            row = [0] * width
            for i, c in enumerate(coeffs):
                if i + j < width:
                    row[i + j] = c
            rows.append(row[::-1])  # highest degree first
    reduced, _ = sympy.Matrix(rows).rref()
    last = None
    for r in range(reduced.rows):
        if any(reduced.row(r)):
            last = reduced.row(r)
    coeffs = list(last)[::-1]
    k = next(i for i, c in enumerate(coeffs) if c != 0)
    coeffs = coeffs[k:]
    g = sympy.Poly(sum(c * x**i for i, c in enumerate(coeffs)), x)
    ratio = sympy.cancel(g.as_expr() / D)
    num, den = sympy.fraction(sympy.together(ratio))
    return _from_sympy(num, den, fns[0].q)


def _from_sympy(num, den, q):
    def coeffs(e):
        c = sympy.Poly(e, x).all_coeffs()[::-1]
        return [Q(int(r.p), int(r.q)) for r in map(sympy.Rational, c)]

    f = RationalFn(coeffs(num), coeffs(den), 0, q)
    return normalised(f)


def normalised(f: RationalFn) -> RationalFn:
    """Drop the unit X^k and scale so the numerator has constant term 1."""
    return RationalFn([c / f.num[0] for c in f.num], f.den, 0, f.q)


def random_ideal(rng):
    """2 to 4 generators built from a shared pool of factors; denominators of degree <= 4."""
    X = RationalFn.X(3)
    ONE = RationalFn.const(1, 3)
    pool = [1 - X, 1 + X, 1 - 2 * X, 1 + 3 * X + X**2, 1 - X**2 * Q(1, 2), 1 + X * Q(2, 3)]
    gens = []
    for _ in range(rng.randint(2, 4)):
        den = ONE
        while True:
            cand = den * rng.choice(pool)
            if len(cand.den) - 1 + len(cand.num) - 1 > 4:
                break
            den = cand
            if rng.random() < 0.4:
                break
        num = ONE
        for _ in range(rng.randint(0, 2)):
            num = num * rng.choice(pool)
        num = num * rng.choice([1, 2, -3, Q(1, 2)]) * X ** rng.randint(-2, 2)
        gens.append(num / den)
    return gens

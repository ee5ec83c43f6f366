import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitary_newforms.arithmetic import Q
from unitary_newforms.ratfunc import (
    L_E,
    RationalFn,
    gcd_generator,
    is_laurent_polynomial,
    series_expand,
    subst_one_minus_s,
)

from gcd_oracle import brute_force_generator, normalised, random_ideal

q = 3
X = RationalFn.X(q)
ONE = RationalFn.const(1, q)


def small_poly():
    return st.lists(st.integers(-4, 4), min_size=1, max_size=4).filter(any)


@st.composite
def ratfns(draw):
    num = draw(small_poly())
    den = draw(st.lists(st.integers(-3, 3), min_size=0, max_size=3))
    shift = draw(st.integers(-3, 3))
    return RationalFn(num, [1] + den, shift, q)


def test_canonical_form():
    f = (1 - X**2) / (1 - X)
    assert f == 1 + X and f.den == (1,)
    g = RationalFn([0, 0, 2], [0, 4], 0, q)
    assert g.shift == 1 and g.num == (Q(1, 2),) and g.den == (1,)


def test_subst_examples():
    assert subst_one_minus_s(L_E(q)) == 1 / (1 - Q(1, 9) / X)
    assert subst_one_minus_s(X) == RationalFn.monomial(Q(1, 9), -1, q)
    assert subst_one_minus_s(subst_one_minus_s(L_E(q))) == L_E(q)


@given(ratfns())
def test_subst_is_involutive_ring_hom(f):
    assert subst_one_minus_s(subst_one_minus_s(f)) == f
    g = f * (1 + X) + X**-1
    assert subst_one_minus_s(f * g) == subst_one_minus_s(f) * subst_one_minus_s(g)


@given(ratfns(), ratfns(), ratfns())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if not a.is_zero():
        assert a / a == 1 and a * a.inverse() == 1


@given(ratfns())
def test_render_parse_round_trip(f):
    assert RationalFn.parse(str(f), q) == f
    assert RationalFn.parse(repr(f)[len("RationalFn("):-1], q) == f


def test_laurent_detection():
    assert is_laurent_polynomial(1 - X)
    assert not is_laurent_polynomial(L_E(q))
    assert is_laurent_polynomial((1 - X**2) / (1 - X))
    assert is_laurent_polynomial(X**-3 + 2)


def test_series_examples():
    assert series_expand(L_E(q), 3) == [1, 1, 1, 1]
    assert series_expand((1 - X) / (1 - 2 * X), 2) == [1, 1, 2]
    assert series_expand(X**2, 3) == [0, 0, 1, 0]
    with pytest.raises(ValueError):
        series_expand(X**-1, 3)


@given(ratfns().filter(lambda f: f.shift >= 0), ratfns().filter(lambda f: f.shift >= 0))
def test_series_is_multiplicative(f, g):
    n = 6
    a, b, ab = f.series_expand(n), g.series_expand(n), (f * g).series_expand(n)
    assert ab == [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)]


def test_monomial_form():
    assert (9 * X**2).monomial_form() == (9, 2)
    assert (1 - X).monomial_form() is None


def test_qs_rendering():
    assert L_E(q).to_qs() == "1/(1 - q^{-2s})"
    assert (9 * X**2).to_qs() == "9*q^{-4s}"


def test_gcd_examples():
    assert gcd_generator([L_E(q)]) == L_E(q)
    assert gcd_generator([1 - X, X]) == 1
    assert gcd_generator([L_E(q), ONE]) == L_E(q)
    with pytest.raises(ValueError):
        gcd_generator([])


def test_gcd_agrees_with_brute_force_oracle():
    rng = random.Random(2024)
    for _ in range(50):
        gens = random_ideal(rng)
        assert gcd_generator(gens) == brute_force_generator(gens)
        assert gcd_generator(gens) == normalised(gcd_generator(gens))


def test_mismatched_q_rejected():
    with pytest.raises(ValueError):
        RationalFn.X(3) + RationalFn.X(5)

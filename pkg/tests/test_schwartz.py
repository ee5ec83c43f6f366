import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitary_newforms.arithmetic import Q, QuadField, val_F
from unitary_newforms.group import Mat2, random_KH, t_H
from unitary_newforms.ratfunc import L_E, RationalFn, subst_one_minus_s
from unitary_newforms.schwartz import (
    LatticeFn,
    LatticeTerm,
    f_function,
    find_difference,
    fourier_hat,
    fourier_star,
    gl2_act,
    grid_parameters,
    phi_n,
    random_lattice_fn,
    z_integral,
    z_integral_phased,
)

from schwartz_oracle import brute_fourier_value, shell_coefficients

p = 3
q = Q(p)
X = RationalFn.X(p)
LE = L_E(p)
MINUS_ONE = ((-1, 0), (0, 1))
SWAP = ((0, 1), (1, 0))
K3 = QuadField(3)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_hat_phi_n(n):
    assert fourier_hat(phi_n(n, p)) == LatticeFn.char(p, a=0, b=-n, coeff=q**-n)


def test_phi_0_self_dual():
    assert fourier_hat(phi_n(0, p)) == phi_n(0, p)
    assert fourier_star(phi_n(0, p)) == phi_n(0, p)


def test_shifted_term_double_transform():
    F = LatticeFn.char(p, a=0, c=Q(1, 3))
    H = fourier_hat(F)
    assert H != LatticeFn.char(p, a=0, b=0)
    assert fourier_hat(H) == F
    assert gl2_act(MINUS_ONE, fourier_star(F)) == H


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_minus_one_star_is_hat(n):
    assert gl2_act(MINUS_ONE, fourier_star(phi_n(n, p))) == fourier_hat(phi_n(n, p))


def test_gl2_act_examples():
    F = random_lattice_fn(p, random.Random(0))
    assert gl2_act(((1, 0), (0, 1)), F) == F
    assert gl2_act(SWAP, phi_n(2, p)) == LatticeFn.char(p, a=0, b=2)
    with pytest.raises(ValueError):
        gl2_act(((1, 1), (0, 1)), F)
    with pytest.raises(ValueError):
        gl2_act(((0, 0), (0, 1)), F)


def test_gl2_act_pointwise():
    rng = random.Random(4)
    for _ in range(30):
        F = random_lattice_fn(p, rng)
        g11, g22 = Q(rng.choice([1, 2, 3, Q(1, 3)])), Q(rng.choice([1, -1, 9, Q(2, 3)]))
        for g in (((g11, 0), (0, g22)), ((0, g11), (g22, 0))):
            G = gl2_act(g, F)
            for _ in range(10):
                x, y = Q(rng.randrange(27), 9), Q(rng.randrange(27), 9)
                xg = x * Q(g[0][0]) + y * Q(g[1][0])
                yg = x * Q(g[0][1]) + y * Q(g[1][1])
                assert G.evaluate(x, y) == F.evaluate(xg, yg)


def test_equality_is_semantic():
    whole = LatticeFn.char(p, a=0)
    pieces = LatticeFn([LatticeTerm(1, c=j, a=1) for j in range(3)], p)
    assert whole == pieces
    assert whole != LatticeFn.char(p, a=1)
    assert find_difference(whole, LatticeFn.char(p, a=1)) is not None


def test_equality_with_phases():
    from unitary_newforms.arithmetic import psi_F

    lhs = LatticeFn([LatticeTerm(1, alpha=Q(1, 3))], p)
    rhs = LatticeFn([LatticeTerm(1, c=j, a=1, gamma=psi_F(Q(j, 3), p)) for j in range(3)], p)
    assert lhs == rhs
    # sum of all three cube roots of unity vanishes
    zero = LatticeFn([LatticeTerm(1, gamma=psi_F(Q(j, 3), p)) for j in range(3)], p)
    assert zero == LatticeFn([], p)


def test_grid_parameters_cover_support():
    F = LatticeFn([LatticeTerm(1, alpha=Q(1, 9), c=Q(1, 3), a=2, b=-1)], p)
    prm = grid_parameters(F)
    assert prm["Mx"] == 2 and prm["Nx"] == 3 and prm["My"] == 2


@given(st.integers(0, 10**6))
def test_double_transform_and_star(seed):
    rng = random.Random(seed)
    F = random_lattice_fn(p, rng)
    assert fourier_hat(fourier_hat(F)) == F
    # the star pairing is symmetric, so applying it twice gives F(-x, -y)
    assert fourier_star(fourier_star(F)) == gl2_act(((-1, 0), (0, -1)), F)
    assert gl2_act(MINUS_ONE, fourier_star(F)) == fourier_hat(F)


@given(st.integers(0, 10**6))
def test_transform_linear(seed):
    rng = random.Random(seed)
    F, G = random_lattice_fn(p, rng), random_lattice_fn(p, rng)
    assert fourier_hat(F + G.scale(3)) == fourier_hat(F) + fourier_hat(G).scale(3)


def test_transforms_match_brute_force_sum():
    rng = random.Random(9)
    for _ in range(8):
        F = random_lattice_fn(p, rng, max_terms=2)
        H, S = fourier_hat(F), fourier_star(F)
        for _ in range(3):
            x, y = Q(rng.randrange(-9, 9), 3), Q(rng.randrange(-9, 9), 3)
            assert H.evaluate(x, y) == brute_fourier_value(F, x, y, -1, 2, -1)
            assert S.evaluate(x, y) == brute_fourier_value(F, x, y, -1, 2, 1)


# ---- zeta integrals

def test_z_examples():
    for n in range(4):
        assert z_integral(((1, 0), (0, 1)), phi_n(n, p)) == LE
    assert z_integral(((q, 0), (0, 1 / q)), phi_n(0, p)) == X / (1 - X)
    with pytest.raises(ValueError):
        z_integral(((1, 0), (0, 0)), phi_n(0, p))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_z_on_stabiliser(n):
    rng = random.Random(n)
    H = fourier_hat(phi_n(n, p))
    for _ in range(50):
        while True:
            g11, g22 = Q(rng.choice([1, 2, 4, 5])), Q(rng.choice([1, 2, 7]))
            g21, g12 = rng.randint(-5, 5) * q**n, rng.randint(-5, 5) / q**n
            det = g11 * g22 - g12 * g21
            if det and val_F(det, p) == 0:
                break
        g = ((g11, g12), (g21, g22))
        assert z_integral(g, phi_n(n, p)) == LE
        lhs = subst_one_minus_s(z_integral(g, H))
        assert lhs == RationalFn.monomial(q**n, n, p) * subst_one_minus_s(LE)


def _series_by_phase(z, v):
    out = {}
    for ph, fn in z.items():
        if v >= fn.shift:
            c = RationalFn(fn.num, fn.den, 0, p).series_expand(v - fn.shift)[v - fn.shift]
            if c:
                out[ph] = c
    return out


def test_z_matches_shell_sum_oracle():
    from unitary_newforms.arithmetic import reduce_phase_sum

    rng = random.Random(17)
    checked = 0
    while checked < 25:
        F = random_lattice_fn(p, rng, max_terms=2)
        g = ((1, 0), (Q(rng.choice([0, 1, 3, Q(1, 3), 2])), Q(rng.choice([1, 2, 3, Q(1, 3)]))))
        try:
            z = z_integral_phased(g, F)
        except ValueError:
            continue
        oracle = shell_coefficients(g, F, -4, 5, 4)
        for v in range(-4, 5):
            mine = reduce_phase_sum(_series_by_phase(z, v), p)
            assert {k: Q(c) for k, c in mine.items()} == oracle[v]
        checked += 1


def test_z_phased_collapses_to_rational():
    F = LatticeFn([LatticeTerm(1, beta=Q(1, 3), d=0, b=-2)], p)
    z = z_integral(((1, 0), (0, 1)), F)
    # shells v >= 1 give 1, the unit shell gives -1/(q-1), deeper shells cancel
    expected = X / (1 - X) - Q(1, 2)
    assert z == expected


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_f_on_KH(n):
    rng = random.Random(100 + n)
    Pn = phi_n(n, p)
    Hn = fourier_hat(Pn)
    for _ in range(60):
        k = random_KH(n, K3, rng)
        assert f_function(k, Pn) == LE
        assert subst_one_minus_s(f_function(k, Hn)) == RationalFn.monomial(q**n, n, p) * subst_one_minus_s(LE)
        assert f_function(t_H(K3.uniformizer) @ k, Pn) == X * LE


@given(st.integers(-3, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_f_torus_equivariance(v, n, seed):
    rng = random.Random(seed)
    k = random_KH(n, K3, rng, 6)
    a = K3(rng.choice([1, 2, 4]), rng.choice([0, 1, 2])) * K3.uniformizer**v
    F = phi_n(n, p)
    assert f_function(t_H(a) @ k, F) == RationalFn.monomial(1, v, p) * f_function(k, F)


def test_f_rejects_non_H():
    with pytest.raises(ValueError):
        f_function(Mat2.over_F(K3, 1, 1, 1, 2), phi_n(0, p))

"""The unitary group G = U(2,1)(E/F), its subgroups, and U(1,1) inside it.

G is realised as the 3x3 matrices g over E with  conj(g)^T J g = J  for the
antidiagonal J.  H = U(1,1) sits in G on rows/columns 1 and 3; its elements
are handled as 2x2 :class:`Mat2` objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arithmetic import INF, Q, QuadExtElem, QuadField, val_E, val_F

_J = (2, 1, 0)  # J[i][_J[i]] = 1


def _mul3(A, B, K: QuadField):
    eps = K.eps
    out = []
    for i in range(3):
        r0, r1, r2 = A[3 * i], A[3 * i + 1], A[3 * i + 2]
        row = (r0, r1, r2)
        for j in range(3):
            sa = sb = 0
            for k in range(3):
                x = row[k]
                if not (x.a or x.b):
                    continue
                y = B[3 * k + j]
                if not (y.a or y.b):
                    continue
                sa += x.a * y.a + eps * x.b * y.b
                sb += x.a * y.b + x.b * y.a
            out.append(QuadExtElem(Q(sa), Q(sb), K))
    return tuple(out)


def _entry3(A, B, i, j, eps, K):
    sa = sb = 0
    for k in range(3):
        x = A[3 * i + k]
        y = B[3 * k + j]
        if (x.a or x.b) and (y.a or y.b):
            sa += x.a * y.a + eps * x.b * y.b
            sb += x.a * y.b + x.b * y.a
    return QuadExtElem(Q(sa), Q(sb), K)


class GroupElem:
    """A 3x3 matrix over E lying in G.  Entries are 0-indexed: ``g[i, j]``."""

    __slots__ = ("m", "K")

    def __init__(self, entries, K: QuadField | None = None, check: bool = True):
        flat = []
        for row in entries:
            if isinstance(row, QuadExtElem):
                flat.append(row)
            else:
                flat.extend(row)
        if K is None:
            K = next(x.K for x in flat if isinstance(x, QuadExtElem))
        self.K = K
        self.m = tuple(x if isinstance(x, QuadExtElem) else K(x) for x in flat)
        if len(self.m) != 9:
            raise ValueError("need a 3x3 matrix")
        if check and not self.in_G():
            raise ValueError("matrix does not preserve the hermitian form J")

    @classmethod
    def identity(cls, K: QuadField) -> GroupElem:
        o, z = K.one, K.zero
        return cls._raw((o, z, z, z, o, z, z, z, o), K)

    @classmethod
    def _raw(cls, flat, K) -> GroupElem:
        g = object.__new__(cls)
        g.m = tuple(flat)
        g.K = K
        return g

    def __getitem__(self, ij) -> QuadExtElem:
        i, j = ij
        return self.m[3 * i + j]

    def rows(self):
        return [list(self.m[3 * i: 3 * i + 3]) for i in range(3)]

    def __matmul__(self, other: GroupElem) -> GroupElem:
        return GroupElem._raw(_mul3(self.m, other.m, self.K), self.K)

    __mul__ = __matmul__

    def __pow__(self, k: int) -> GroupElem:
        base = self if k >= 0 else self.inverse()
        out = GroupElem.identity(self.K)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> GroupElem:
        # g^{-1} = J conj(g)^T J, i.e. (g^{-1})_{ij} = conj(g_{2-j, 2-i})
        m = self.m
        return GroupElem._raw([m[3 * (2 - j) + (2 - i)].conj() for i in range(3) for j in range(3)], self.K)

    def conj(self) -> GroupElem:
        return GroupElem._raw([x.conj() for x in self.m], self.K)

    def __eq__(self, other):
        return isinstance(other, GroupElem) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "GroupElem(" + "; ".join(", ".join(str(x) for x in r) for r in self.rows()) + ")"

    def is_identity(self) -> bool:
        return all(x == (1 if i in (0, 4, 8) else 0) for i, x in enumerate(self.m))

    def in_G(self) -> bool:
        # (conj(g)^T J g)_{ij} = sum_k conj(g_{k,i}) g_{2-k,j}
        m = self.m
        for i in range(3):
            for j in range(3):
                s = self.K.zero
                for k in range(3):
                    s = s + m[3 * k + i].conj() * m[3 * _J[k] + j]
                if s != (1 if j == _J[i] else 0):
                    return False
        return True

    def det(self) -> QuadExtElem:
        m = self.m
        return (m[0] * (m[4] * m[8] - m[5] * m[7])
                - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6]))


# ---------------------------------------------------------------- generators

def make_u(x: QuadExtElem, y: QuadExtElem) -> GroupElem:
    """Upper unipotent u(x, y); requires y + conj(y) + x conj(x) = 0."""
    K = x.K
    if (y + y.conj() + x * x.conj()) != 0:
        raise ValueError(f"u({x}, {y}) violates y + conj(y) + x conj(x) = 0")
    o, z = K.one, K.zero
    return GroupElem._raw((o, x, y, z, o, -x.conj(), z, z, o), K)


def make_uhat(x: QuadExtElem, y: QuadExtElem) -> GroupElem:
    """Lower unipotent uhat(x, y); same constraint as :func:`make_u`."""
    K = x.K
    if (y + y.conj() + x * x.conj()) != 0:
        raise ValueError(f"uhat({x}, {y}) violates y + conj(y) + x conj(x) = 0")
    o, z = K.one, K.zero
    return GroupElem._raw((o, z, z, x, o, z, y, -x.conj(), o), K)


def u_param(x: QuadExtElem, z) -> QuadExtElem:
    """The second parameter z*sqrt(eps) - x*conj(x)/2 that makes u(x, .) valid."""
    K = x.K
    return K(-(x * x.conj()).a / 2, Q(z))


def make_torus(a: QuadExtElem, b: QuadExtElem | None = None) -> GroupElem:
    """diag(a, b, conj(a)^{-1}) with b of norm one (default 1)."""
    K = a.K
    if not a:
        raise ValueError("torus parameter must be nonzero")
    b = K.one if b is None else b
    if b.norm() != 1:
        raise ValueError("middle torus entry must have norm one")
    z = K.zero
    return GroupElem._raw((a, z, z, z, b, z, z, z, a.conj().inverse()), K)


def make_t(a: QuadExtElem) -> GroupElem:
    """t(a) = diag(a, 1, conj(a)^{-1}) in T_H."""
    return make_torus(a)


def make_zeta_pow(i: int, K: QuadField) -> GroupElem:
    """zeta^i = diag(p^i, 1, p^-i)."""
    return make_torus(K(Q(K.p) ** i))


def make_tn(n: int, K: QuadField) -> GroupElem:
    """t_n: antidiagonal (p^-n, 1, p^n)."""
    z = K.zero
    pn = Q(K.p) ** n
    return GroupElem._raw((z, z, K(1 / pn), z, K.one, z, K(pn), z, z), K)


def make_center(c: QuadExtElem) -> GroupElem:
    if c.norm() != 1:
        raise ValueError("central elements have norm one")
    z = c.K.zero
    return GroupElem._raw((c, z, z, z, c, z, z, z, c), c.K)


def norm_one(c: QuadExtElem) -> QuadExtElem:
    """c / conj(c), an element of E^1 (Hilbert 90)."""
    return c / c.conj()


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class Subgroup:
    """Identifier of a subgroup of G cut out by entrywise conditions.

    tags: ``K`` (K_n), ``Kprime``, ``Kdprime``, ``HeckeCap`` (K_n cap zeta K_n zeta^-1),
    ``LevelCap`` (K_{n-1} cap Z_{n-1} K_n), ``KH`` (K_n cap H), ``U``, ``Uhat``,
    ``T_H``, ``U_H``, ``Z`` (Z_n).
    """

    tag: str
    n: int = 0

    def __str__(self):
        return f"{self.tag}({self.n})"


# entry bound b means val >= b; ("1+", b) means val(x - 1) >= b
def _pattern(s: Subgroup):
    n = s.n
    if s.tag == "K":
        return ((0, 0, -n), (n, ("1+", n), 0), (n, n, 0))
    if s.tag == "Kprime":
        return ((0, 0, 1 - n), (n, ("1+", n), 0), (n, n, 0))
    if s.tag == "HeckeCap":
        return ((0, 1, 2 - n), (n, ("1+", n), 1), (n, n, 0))
    if s.tag == "LevelCap":
        return ((0, 0, 1 - n), (n, ("1+", n - 1), 0), (n, n, 0))
    if s.tag == "Kdprime":
        return ((0, 0, 1 - n), (n - 1, ("1+", n - 1), 0), (n, n - 1, 0))
    if s.tag == "KH":
        return ((0, INF, -n), (INF, ("1+", INF), INF), (n, INF, 0))
    return None


def _check_order(pattern):
    cells = [(i, j) for i in range(3) for j in range(3)]

    def key(ij):
        b = pattern[ij[0]][ij[1]]
        return -(b[1] if isinstance(b, tuple) else b)

    return tuple(sorted(cells, key=key))


_ORDER_CACHE: dict = {}


def _entry_ok(x: QuadExtElem, bound) -> bool:
    if isinstance(bound, tuple):
        x = x - 1
        bound = bound[1]
    if bound == INF:
        return not x
    return val_E(x) >= bound


def _structural(s: Subgroup, g: GroupElem) -> bool:
    m = g.m
    zero = [not x for x in m]
    one = [x == 1 for x in m]
    if s.tag == "U":
        return one[0] and one[4] and one[8] and zero[3] and zero[6] and zero[7]
    if s.tag == "Uhat":
        return one[0] and one[4] and one[8] and zero[1] and zero[2] and zero[5]
    if s.tag == "U_H":
        return s_is_H(g) and one[0] and one[8] and zero[6]
    if s.tag == "T_H":
        return s_is_H(g) and zero[2] and zero[6]
    if s.tag == "Z":
        c = m[0]
        return (all(zero[k] for k in (1, 2, 3, 5, 6, 7)) and m[4] == c and m[8] == c
                and val_E(c - 1) >= s.n)
    raise ValueError(f"unknown subgroup tag {s.tag!r}")


def s_is_H(g: GroupElem) -> bool:
    m = g.m
    return all(not m[k] for k in (1, 3, 5, 7)) and m[4] == 1


def membership(s: Subgroup, g: GroupElem) -> bool:
    """Whether the G-element g lies in the subgroup s."""
    pat = _pattern(s)
    if pat is None:
        return _structural(s, g)
    order = _ORDER_CACHE.get(s)
    if order is None:
        order = _ORDER_CACHE[s] = _check_order(pat)
    m = g.m
    return all(_entry_ok(m[3 * i + j], pat[i][j]) for i, j in order)


def product_membership(s: Subgroup, A: GroupElem, B: GroupElem) -> bool:
    """membership(s, A @ B), computing entries lazily and stopping at the first failure."""
    pat = _pattern(s)
    if pat is None:
        return _structural(s, A @ B)
    order = _ORDER_CACHE.get(s)
    if order is None:
        order = _ORDER_CACHE[s] = _check_order(pat)
    K = A.K
    for i, j in order:
        if not _entry_ok(_entry3(A.m, B.m, i, j, K.eps, K), pat[i][j]):
            return False
    return True


# ---------------------------------------------------------------- sampling

def _rand_E(K: QuadField, rng: random.Random, v: int, spread: int = 2) -> QuadExtElem:
    """Random element of p_E^v (small integer coordinates times p^v)."""
    R = spread * K.p
    s = Q(K.p) ** v
    return K(rng.randint(-R, R) * s, rng.randint(-R, R) * s)


def _rand_F(K: QuadField, rng: random.Random, v: int, spread: int = 2):
    R = spread * K.p
    return rng.randint(-R, R) * Q(K.p) ** v


def rand_unit(K: QuadField, rng: random.Random) -> QuadExtElem:
    p = K.p
    while True:
        a0, a1 = rng.randrange(p), rng.randrange(p)
        if a0 or a1:
            break
    return K(a0 + p * rng.randint(-2, 2), a1 + p * rng.randint(-2, 2))


def rand_norm_one(K: QuadField, rng: random.Random, level: int) -> QuadExtElem:
    """Random element of E^1 congruent to 1 mod p_E^level."""
    if level <= 0:
        return norm_one(rand_unit(K, rng))
    r = _rand_E(K, rng, level, spread=1)
    return norm_one(K.one + r)


def _u_gen(K, rng, vx, vz):
    x = _rand_E(K, rng, vx)
    return make_u(x, u_param(x, _rand_F(K, rng, vz)))


def _uhat_gen(K, rng, vx, vz):
    x = _rand_E(K, rng, vx)
    return make_uhat(x, u_param(x, _rand_F(K, rng, vz)))


def _torus_gen(K, rng, level):
    return make_torus(rand_unit(K, rng), rand_norm_one(K, rng, level))


def _h_gen(K, rng, n):
    choice = rng.randrange(5)
    if choice == 0:
        return h_to_G(u_H(K(0, _rand_F(K, rng, -n))))
    if choice == 1:
        return h_to_G(uhat_H(K(0, _rand_F(K, rng, n))))
    if choice == 2:
        return h_to_G(t_H(rand_unit(K, rng)))
    if choice == 3:
        c = rand_norm_one(K, rng, 0)
        return h_to_G(Mat2(c, K.zero, K.zero, c))
    return h_to_G(j_H(n, K))


def generators_sampler(s: Subgroup, K: QuadField):
    """Return ``f(rng) -> GroupElem`` drawing one random generator of the subgroup s."""
    n = s.n
    if s.tag == "K":
        fams = [lambda r: _u_gen(K, r, 0, -n), lambda r: _uhat_gen(K, r, n, n),
                lambda r: _torus_gen(K, r, n), lambda r: make_tn(n, K)]
    elif s.tag == "Kprime":
        fams = [lambda r: _u_gen(K, r, 0, 1 - n), lambda r: _uhat_gen(K, r, n, n),
                lambda r: _torus_gen(K, r, n)]
    elif s.tag == "HeckeCap":
        fams = [lambda r: _u_gen(K, r, 1, 2 - n), lambda r: _uhat_gen(K, r, n, n),
                lambda r: _torus_gen(K, r, n)]
    elif s.tag == "LevelCap":
        fams = [lambda r: _u_gen(K, r, 0, 1 - n), lambda r: _uhat_gen(K, r, n, n),
                lambda r: _torus_gen(K, r, n - 1)]
    elif s.tag == "Kdprime":
        fams = [lambda r: _u_gen(K, r, 0, 1 - n), lambda r: _uhat_gen(K, r, n - 1, n),
                lambda r: _torus_gen(K, r, n - 1)]
    elif s.tag == "KH":
        fams = [lambda r: _h_gen(K, r, n)]
    else:
        raise ValueError(f"no generator set for {s}")
    return lambda rng: rng.choice(fams)(rng)


def random_element(s: Subgroup, K: QuadField, rng: random.Random, length: int = 12) -> GroupElem:
    """Random word of the given length in explicit generators of s."""
    draw = generators_sampler(s, K)
    g = draw(rng)
    for _ in range(length - 1):
        g = g @ draw(rng)
    return g


# ---------------------------------------------------------------- H = U(1,1)

class Mat2:
    """A 2x2 matrix over E (not necessarily in H)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        K = next(x.K for x in (a, b, c, d) if isinstance(x, QuadExtElem))
        self.a, self.b, self.c, self.d = (x if isinstance(x, QuadExtElem) else K(x) for x in (a, b, c, d))

    @property
    def K(self) -> QuadField:
        return self.a.K

    @classmethod
    def over_F(cls, K: QuadField, a, b, c, d) -> Mat2:
        return cls(K(a), K(b), K(c), K(d))

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    __mul__ = __matmul__

    def det(self) -> QuadExtElem:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mat2:
        dt = self.det().inverse()
        return Mat2(self.d * dt, -self.b * dt, -self.c * dt, self.a * dt)

    def conj(self) -> Mat2:
        return Mat2(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o):
        return isinstance(o, Mat2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Mat2([{self.a}, {self.b}], [{self.c}, {self.d}])"

    def is_over_F(self) -> bool:
        return all(x.is_real() for x in self.entries())

    def in_H(self) -> bool:
        """Unitary for the form antidiag(1, 1)."""
        a, b, c, d = self.entries()
        return ((a.conj() * c + c.conj() * a) == 0 and (b.conj() * d + d.conj() * b) == 0
                and (a.conj() * d + c.conj() * b) == 1)


def t_H(a: QuadExtElem) -> Mat2:
    return Mat2(a, a.K.zero, a.K.zero, a.conj().inverse())


def d_mat(a: QuadExtElem) -> Mat2:
    return Mat2(a, a.K.zero, a.K.zero, a.K.one)


def u_H(w: QuadExtElem) -> Mat2:
    return Mat2(w.K.one, w, w.K.zero, w.K.one)


def uhat_H(w: QuadExtElem) -> Mat2:
    return Mat2(w.K.one, w.K.zero, w, w.K.one)


def j_H(n: int, K: QuadField) -> Mat2:
    pn = Q(K.p) ** n
    return Mat2(K.zero, K(1 / pn), K(pn), K.zero)


def h_to_G(h: Mat2) -> GroupElem:
    K = h.K
    z = K.zero
    return GroupElem._raw((h.a, z, h.b, z, K.one, z, h.c, z, h.d), K)


def G_to_h(g: GroupElem) -> Mat2:
    if not s_is_H(g):
        raise ValueError("element is not in H")
    return Mat2(g[0, 0], g[0, 2], g[2, 0], g[2, 2])


def in_KH(h: Mat2, n: int) -> bool:
    return h.in_H() and membership(Subgroup("KH", n), h_to_G(h))


def in_U_H(h: Mat2) -> bool:
    return h.in_H() and h.a == 1 and h.d == 1 and not h.c


def decompose_H(h: Mat2):
    """Write h = t(b) d(sqrt eps) h1 d(sqrt eps)^-1 with h1 in SL_2(F).

    b is taken as h_11 when h_11 / conj(h_11) = det h, otherwise 1 + det h
    (or sqrt(eps) when det h = -1).
    """
    if not h.in_H():
        raise ValueError("decompose_H needs an element of H")
    K = h.K
    delta = h.det()
    if h.a and h.a == delta * h.a.conj():
        b = h.a
    elif delta != -1:
        b = 1 + delta
    else:
        b = K.sqrt_eps
    se = d_mat(K.sqrt_eps)
    h1 = se.inverse() @ t_H(b).inverse() @ h @ se
    if not h1.is_over_F() or h1.det() != 1:
        raise ArithmeticError(f"decomposition of {h} failed: h1 = {h1}")
    return b, h1


def iwasawa_H(h: Mat2, n: int):
    """Write h = u t(a) k with u in U_H, k in K_{n,H}; returns (u, a, k)."""
    if not h.in_H():
        raise ValueError("iwasawa_H needs an element of H")
    K = h.K
    if in_KH(h, n):
        return Mat2(K.one, K.zero, K.zero, K.one), K.one, h
    c, d = h.c, h.d
    if d and (not c or val_E(c) - val_E(d) >= n):
        jn = None
        h0 = h
    else:
        jn = j_H(n, K)
        h0 = h @ jn
        c, d = h0.c, h0.d
    # bottom row of h0 equals conj(a)^{-1} (c/d, 1); take k0 = uhat(c/d)
    a = d.conj().inverse()
    k0 = uhat_H(c / d)
    ut = h0 @ k0.inverse()
    u = ut @ t_H(a).inverse()
    k = k0 if jn is None else k0 @ jn.inverse()
    if not (in_U_H(u) and in_KH(k, n) and u @ t_H(a) @ k == h):
        raise ArithmeticError(f"Iwasawa decomposition of {h} failed")
    return u, a, k


def random_KH(n: int, K: QuadField, rng: random.Random, length: int = 12) -> Mat2:
    return G_to_h(random_element(Subgroup("KH", n), K, rng, length))


# ---------------------------------------------------------------- identities

def verify_conjugation_identities(n: int, samples: int, K: QuadField, rng: random.Random) -> dict:
    """Check the matrix identities behind the Hecke and level-lowering computations.

    Returns ``{name: {"checked": int, "failures": [params, ...]}}``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    p = K.p
    P = Q(p)
    report = {}

    def record(name, ok, params):
        r = report.setdefault(name, {"checked": 0, "failures": []})
        r["checked"] += 1
        if not ok:
            r["failures"].append(params)

    tn, tn1, zeta = make_tn(n, K), make_tn(n - 1, K), make_zeta_pow(1, K)
    record("t_n squared is 1", (tn @ tn).is_identity(), {"n": n})
    for m in range(0, n + 2):
        record("t_n squared is 1", (make_tn(m, K) @ make_tn(m, K)).is_identity(), {"n": m})
    record("zeta t_n = t_{n-1}", zeta @ tn == tn1, {"n": n})

    for _ in range(samples):
        # Hecke representatives: zeta t_n u zeta t_n = t_{n-1} u t_{n-1} = uhat(...)
        y = K(rng.randrange(p), rng.randrange(p))
        z = rng.randrange(p) * P ** (1 - n)
        uy = make_u(y, u_param(y, z))
        lhs = zeta @ tn @ uy @ zeta @ tn
        rhs = tn1 @ uy @ tn1
        params = {"n": n, "y": str(y), "z": str(z)}
        record("zeta t_n u zeta t_n = t_{n-1} u t_{n-1}", lhs == rhs, params)
        target = make_uhat(-(y.conj() * P ** (n - 1)), u_param(y, z) * P ** (2 * n - 2))
        xh, wh = rhs[1, 0], rhs[2, 0]
        ok = (rhs == target and val_E(xh) >= n - 1
              and (not wh.a or val_F(wh.a, p) >= 2 * n - 2)
              and val_F(wh.b, p) >= n - 1)
        record("t_{n-1} u t_{n-1} in Uhat with parameters in p^{n-1}", ok, params)

        # general t_m u t_m and t_m uhat t_m
        mm = rng.randint(-2, n + 1)
        x = _rand_E(K, rng, rng.randint(-2, 2))
        w = u_param(x, _rand_F(K, rng, rng.randint(-3, 3)))
        tm = make_tn(mm, K)
        Pm = P ** mm
        record("t_m u(x,y) t_m = uhat(-p^m conj x, p^2m y)",
               tm @ make_u(x, w) @ tm == make_uhat(-(x.conj() * Pm), w * Pm * Pm),
               {"m": mm, "x": str(x), "y": str(w)})
        record("t_m uhat(x,y) t_m = u(-p^-m conj x, p^-2m y)",
               tm @ make_uhat(x, w) @ tm == make_u(-(x.conj() / Pm), w / (Pm * Pm)),
               {"m": mm, "x": str(x), "y": str(w)})

        # zeta^i conjugation
        i = rng.randint(-3, 3)
        zi, zmi = make_zeta_pow(i, K), make_zeta_pow(-i, K)
        Pi = P ** i
        record("zeta^i u(a,w) zeta^-i = u(p^i a, p^2i w)",
               zi @ make_u(x, w) @ zmi == make_u(x * Pi, w * Pi * Pi),
               {"i": i, "a": str(x), "w": str(w)})
        record("zeta^i uhat(a,w) zeta^-i = uhat(p^-i a, p^-2i w)",
               zi @ make_uhat(x, w) @ zmi == make_uhat(x / Pi, w / (Pi * Pi)),
               {"i": i, "a": str(x), "w": str(w)})

        # level-lowering step: zeta t_n uhat(y, -y ybar/2) t_n = zeta u(-p^-n conj y, ...)
        if n >= 2:
            yl = K(rng.randrange(p), rng.randrange(p)) * P ** (n - 1)
            wl = u_param(yl, 0)
            lhs = tn1 @ make_uhat(yl, wl)
            rhs = zeta @ tn @ make_uhat(yl, wl) @ tn
            y2 = -(yl.conj() / P**n)
            target = zeta @ make_u(y2, u_param(y2, 0))
            record("t_{n-1} uhat(y) = zeta u(-p^-n conj y, .) t_n",
                   lhs == rhs @ tn and rhs == target and val_E(y2) >= -1,
                   {"n": n, "y": str(yl)})
    return report

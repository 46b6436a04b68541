"""Oracle tests for the partition-indexed character sums Phi(chi; z)."""

import itertools
import random

import pytest

from hgfq.chars import MulChar, standard_psi, trivial_char
from hgfq.cyclo import Cyclo
from hgfq.ffield import build_field, build_field_q
from hgfq.genhgf import (
    HDeltaChar,
    JmChar,
    Partition,
    WDeltaElem,
    hdelta_chars,
    h_to_matrix,
    identity_w,
    iota,
    iota_inv,
    mat_mul,
    mu_matrix,
    mu_matrix_prime,
    normalized_z,
    p_poly,
    phi2_from_zpp,
    phi_delta,
    reduce_to_classical,
    series_mul,
    theta,
    theta_bar,
    theta_list,
    theta_multinomial,
    w_action_on_char,
    w_to_matrix,
)


# -- partitions ------------------------------------------------------------


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((2, 1))
    with pytest.raises(ValueError):
        Partition((0, 1))
    p = Partition((1, 1, 2, 2, 2))
    assert p.n == 8 and p.l == 5
    assert p.grouped() == [(1, 2), (2, 3)]
    assert [list(r) for r in p.column_blocks()] == [[0], [1], [2, 3], [4, 5], [6, 7]]


def test_partition_characteristic_guard():
    f = build_field(3)
    with pytest.raises(ValueError):
        Partition((4,)).check_char(f)
    Partition((3,)).check_char(f)  # p >= largest part is fine


# -- log/exp coordinates ---------------------------------------------------


def test_theta1_is_ratio():
    f = build_field(7)
    for x0 in f.units():
        for x1 in f.elements():
            assert theta(f, 1, (x0, x1)) == f.div(x1, x0)


def test_theta2_spot_f5():
    f = build_field(5)
    assert theta(f, 2, (1, 2, 3)) == 1  # 2*th2 = 2*3 - 2*2 = 2


def test_theta_bar_is_polynomial_scaling():
    f = build_field(5)
    x = (2, 3, 1)
    assert theta_bar(f, 2, x) == f.mul(f.pow(2, 2), theta(f, 2, x))


def test_theta_index_bound():
    f = build_field(3)
    with pytest.raises(ValueError):
        theta(f, 3, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        theta_list(f, 1, (0, 1))


def test_theta_additive_on_products():
    # theta_i(x * y) = theta_i(x) + theta_i(y): log takes products to sums
    f = build_field(5)
    rng = random.Random(3)
    for _ in range(25):
        x = (rng.choice(list(f.units())), rng.randrange(5), rng.randrange(5))
        y = (rng.choice(list(f.units())), rng.randrange(5), rng.randrange(5))
        xy = series_mul(f, x, y)
        tx, ty, txy = (theta_list(f, 2, v) for v in (x, y, xy))
        assert all(f.add(a, b) == c for a, b, c in zip(tx, ty, txy))


def test_theta_matches_multinomial_expansion():
    f = build_field(7)
    rng = random.Random(5)
    for _ in range(20):
        x = tuple([rng.choice(list(f.units()))] + [rng.randrange(7) for _ in range(3)])
        for i in (1, 2, 3):
            assert theta(f, i, x) == theta_multinomial(f, i, x)


def test_p_poly_spot_f5():
    f = build_field(5)
    assert p_poly(f, 2, (2, 3)) == 0  # 2*p2 = 2*2 + 2*3 = 10 = 0


def test_iota_spot_f3():
    f = build_field(3)
    assert iota(f, (2, 1)) == (2, 2)  # theta_1 = 1/2 = 2


def test_iota_roundtrip_f5_m3():
    f = build_field(5)
    for h in itertools.product(f.units(), f.elements(), f.elements()):
        a0, *a = iota(f, h)
        assert iota_inv(f, a0, a) == h
    with pytest.raises(ValueError):
        iota_inv(f, 0, (1,))


# -- block-group characters ------------------------------------------------


def test_jmchar_is_multiplicative():
    f = build_field(5)
    psi = standard_psi(f)
    chi = JmChar(MulChar(f, 1), (2, 3), psi)
    rng = random.Random(11)
    for _ in range(20):
        x = tuple([rng.choice(list(f.units()))] + [rng.randrange(5) for _ in range(2)])
        y = tuple([rng.choice(list(f.units()))] + [rng.randrange(5) for _ in range(2)])
        assert chi.eval(series_mul(f, x, y)) == chi.eval(x) * chi.eval(y)


def test_jmchar_vanishes_off_units():
    f = build_field(3)
    chi = JmChar(MulChar(f, 0), (1,), standard_psi(f))
    assert chi.eval((0, 1)) == Cyclo.zero()


def test_hdelta_char_group_size():
    f = build_field(3)
    delta = Partition((1, 2))
    chars = list(hdelta_chars(f, delta, standard_psi(f)))
    # (q-1) choices for the size-1 block, (q-1)*q for the size-2 block
    assert len(chars) == 2 * (2 * 3)


# -- substitution matrices -------------------------------------------------


def test_mu_identity():
    f = build_field(5)
    m = 4
    ident = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    assert mu_matrix(f, (1, 0, 0), m) == ident


def test_mu_m2_diagonal():
    f = build_field(7)
    for c in f.units():
        assert mu_matrix(f, (c,), 2) == [[1, 0], [0, c]]


def test_mu_scaling_is_diagonal():
    f = build_field(5)
    y1 = 3
    mat = mu_matrix(f, (y1, 0, 0), 4)
    for i in range(4):
        for j in range(4):
            assert mat[i][j] == (f.pow(y1, i) if i == j else 0)


def test_mu_composition_law():
    # mu(a) mu(b) = mu(c) with c_k = sum_j a_j mu_(j,k)(b): substitution of
    # one truncated series into another
    f = build_field(5)
    m = 4
    rng = random.Random(2)
    for _ in range(10):
        a = tuple([rng.choice(list(f.units()))] + [rng.randrange(5) for _ in range(m - 2)])
        b = tuple([rng.choice(list(f.units()))] + [rng.randrange(5) for _ in range(m - 2)])
        Mb = mu_matrix(f, b, m)
        c = tuple(
            sum_
            for sum_ in (
                [
                    _dot(f, [a[j - 1] for j in range(1, m)], [Mb[j][k] for j in range(1, m)])
                    for k in range(1, m)
                ]
            )
        )
        assert mat_mul(f, mu_matrix(f, a, m), Mb) == mu_matrix(f, c, m)


def _dot(field, xs, ys):
    acc = 0
    for x, y in zip(xs, ys):
        acc = field.add(acc, field.mul(x, y))
    return acc


def test_mu_validation():
    f = build_field(3)
    with pytest.raises(ValueError):
        mu_matrix(f, (0, 1), 3)
    with pytest.raises(ValueError):
        mu_matrix(f, (1,), 3)


def test_mu_prime_drops_border():
    f = build_field(5)
    full = mu_matrix(f, (2, 1), 3)
    prime = mu_matrix_prime(f, (2, 1), 3)
    assert prime == [row[1:] for row in full[1:]]


def test_act_mu_matches_direct_composition():
    # chi.act_mu(c) pairs a with mu' theta(h), i.e. equals chi at the element
    # whose log coordinates are transpose(mu') applied to theta(h)
    f = build_field(5)
    psi = standard_psi(f)
    chi = JmChar(MulChar(f, 2), (1, 3), psi)
    c = (2, 4)
    moved = chi.act_mu(c)
    mp = mu_matrix_prime(f, c, 3)
    for h in itertools.product(f.units(), f.elements(), f.elements()):
        th = theta_list(f, 2, h)
        th2 = tuple(_dot(f, [mp[i][j] for i in range(2)], th) for j in range(2))
        hm = iota_inv(f, h[0], th2)
        assert moved.eval(h) == chi.eval(hm)


# -- the sum and its symmetries --------------------------------------------


def test_phi_d1_orthogonality():
    f = build_field(3)
    psi = standard_psi(f)
    delta = Partition((1,))
    eps_chi = HDeltaChar(delta, (JmChar(MulChar(f, 0), (), psi),))
    chi1 = HDeltaChar(delta, (JmChar(MulChar(f, 1), (), psi),))
    z = [[1]]
    assert phi_delta(eps_chi, z) == Cyclo.integer(2)
    assert phi_delta(chi1, z) == Cyclo.zero()


def test_phi_zero_column_block():
    f = build_field(3)
    psi = standard_psi(f)
    delta = Partition((1,))
    chi = HDeltaChar(delta, (JmChar(MulChar(f, 0), (), psi),))
    assert phi_delta(chi, [[0]]) == Cyclo.zero()


def test_phi_shape_validation():
    f = build_field(3)
    psi = standard_psi(f)
    chi = HDeltaChar(Partition((1, 1)), tuple(JmChar(MulChar(f, 0), (), psi) for _ in range(2)))
    with pytest.raises(ValueError):
        phi_delta(chi, [[1]])


def _random_w(f, delta, rng):
    sigmas, cs = [], []
    for size, mult in delta.grouped():
        perm = list(range(mult))
        rng.shuffle(perm)
        sigmas.append(tuple(perm))
        cs.append(
            tuple(
                tuple(
                    [rng.choice(list(f.units()))]
                    + [rng.randrange(f.q) for _ in range(size - 2)]
                )
                if size > 1
                else ()
                for _ in range(mult)
            )
        )
    return WDeltaElem(delta, tuple(sigmas), tuple(cs))


def _random_z(f, d, n, rng):
    return [[rng.randrange(f.q) for _ in range(n)] for _ in range(d)]


@pytest.mark.parametrize("q", [3, 5])
@pytest.mark.parametrize("parts", [(1, 1, 2), (2, 2), (1, 2, 2)])
def test_symmetry_group_action(q, parts):
    # Phi(chi composed with w; z) = Phi(chi; z w)
    f = build_field_q(q)
    psi = standard_psi(f)
    delta = Partition(parts)
    chars = list(hdelta_chars(f, delta, psi))
    rng = random.Random(q * 100 + sum(parts))
    for _ in range(5):
        chi = rng.choice(chars)
        w = _random_w(f, delta, rng)
        z = _random_z(f, 2, delta.n, rng)
        lhs = phi_delta(w_action_on_char(chi, w), z)
        rhs = phi_delta(chi, mat_mul(f, z, w_to_matrix(f, w)))
        assert lhs == rhs


def test_identity_w_is_identity():
    f = build_field(5)
    delta = Partition((1, 2, 2))
    w = identity_w(delta)
    n = delta.n
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    assert w_to_matrix(f, w) == ident
    psi = standard_psi(f)
    chi = next(iter(hdelta_chars(f, delta, psi)))
    assert w_action_on_char(chi, w) == chi


@pytest.mark.parametrize("q", [3, 5])
def test_h_equivariance(q):
    # Phi(chi; z h) = chi(h) Phi(chi; z) for h in the block-Toeplitz group
    f = build_field_q(q)
    psi = standard_psi(f)
    delta = Partition((1, 2))
    chars = list(hdelta_chars(f, delta, psi))
    rng = random.Random(17 + q)
    for _ in range(6):
        chi = rng.choice(chars)
        z = _random_z(f, 2, delta.n, rng)
        hb = [
            tuple([rng.choice(list(f.units()))] + [rng.randrange(f.q) for _ in range(size - 1)])
            for size in delta.parts
        ]
        H = h_to_matrix(f, delta, hb)
        assert phi_delta(chi, mat_mul(f, z, H)) == chi.eval_h(hb) * phi_delta(chi, z)


@pytest.mark.parametrize("q", [3, 5])
def test_gl_d_invariance(q):
    # Phi(chi; g z) = Phi(chi; z) for g invertible: s -> s g permutes the sum
    f = build_field_q(q)
    psi = standard_psi(f)
    delta = Partition((2, 2))
    chars = list(hdelta_chars(f, delta, psi))
    rng = random.Random(23 + q)
    for _ in range(5):
        chi = rng.choice(chars)
        z = _random_z(f, 2, delta.n, rng)
        while True:
            g = [[rng.randrange(f.q) for _ in range(2)] for _ in range(2)]
            det = f.sub(f.mul(g[0][0], g[1][1]), f.mul(g[0][1], g[1][0]))
            if det:
                break
        assert phi_delta(chi, mat_mul(f, g, z)) == phi_delta(chi, z)


def test_w_elem_validation():
    delta = Partition((2, 2))
    with pytest.raises(ValueError):
        WDeltaElem(delta, ((0, 0),), (((1,), (1,)),))  # not a permutation
    with pytest.raises(ValueError):
        WDeltaElem(delta, ((0, 1),), (((0,), (1,)),))  # zero leading coefficient


# -- closed-form reductions ------------------------------------------------


def _exhaustive_reduction_check(q, parts, nlam, rhs=reduce_to_classical, zfun=None):
    f = build_field_q(q)
    psi = standard_psi(f)
    delta = Partition(parts)
    checked = 0
    for chi in hdelta_chars(f, delta, psi):
        for lams in itertools.product(f.units(), repeat=nlam):
            z = zfun(f, lams) if zfun else normalized_z(f, parts, lams)
            try:
                expected = rhs(chi, z)
            except ValueError:
                continue  # stated non-degeneracy hypotheses not met
            assert phi_delta(chi, z) == expected
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_1111_to_2f1(q):
    _exhaustive_reduction_check(q, (1, 1, 1, 1), 1)


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_112_to_1f1(q):
    _exhaustive_reduction_check(q, (1, 1, 2), 1)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_reduction_22_to_0f1(q):
    _exhaustive_reduction_check(q, (2, 2), 1)


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_11111_to_lauricella_fd(q):
    _exhaustive_reduction_check(q, (1, 1, 1, 1, 1), 2)


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_1112_to_humbert_phi1(q):
    _exhaustive_reduction_check(q, (1, 1, 1, 2), 2)


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_122_to_humbert_phi3(q):
    _exhaustive_reduction_check(q, (1, 2, 2), 2)


@pytest.mark.parametrize("q", [3, 4])
def test_reduction_1112_second_form_to_humbert_phi2(q):
    def zpp(f, lams):
        xp, yp = lams
        return [[1, 1, 1, 0, 1], [0, xp, yp, 1, 0]]

    _exhaustive_reduction_check(q, (1, 1, 1, 2), 2, rhs=phi2_from_zpp, zfun=zpp)


def test_reduction_degenerate_rejected():
    f = build_field(3)
    psi = standard_psi(f)
    delta = Partition((2, 2))
    eps = MulChar(f, 0)
    chi = HDeltaChar(delta, (JmChar(eps, (0,), psi), JmChar(eps, (1,), psi)))
    z = normalized_z(f, (2, 2), (1,))
    with pytest.raises(ValueError):
        reduce_to_classical(chi, z)


def test_reduction_spot_value_22():
    # q=3, both characters trivial, both additive parts 1, lam=1:
    # Phi = -2 * eps(-1) * g(eps) * 0F1(; eps; -1); direct double-sum agrees
    f = build_field(3)
    psi = standard_psi(f)
    delta = Partition((2, 2))
    eps = MulChar(f, 0)
    chi = HDeltaChar(delta, (JmChar(eps, (1,), psi), JmChar(eps, (1,), psi)))
    z = normalized_z(f, (2, 2), (1,))
    assert reduce_to_classical(chi, z) == phi_delta(chi, z)

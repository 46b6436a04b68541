"""Oracle tests for exact cyclotomic arithmetic."""

import random
from fractions import Fraction

import pytest

from hgfq.cyclo import Cyclo, cyclotomic_poly, zeta


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_primitive_cube_roots_sum():
    assert zeta(3) + zeta(3, 2) == Cyclo.integer(-1)


def test_gauss_square():
    # (zeta_3^2 - zeta_3)^2 = -3
    d = zeta(3, 2) - zeta(3)
    assert d * d == Cyclo.integer(-3)


def test_zeta6_equals_minus_zeta3_squared():
    assert zeta(6) == -zeta(3, 2)


def test_equality_across_conductors():
    assert zeta(2) == zeta(6) ** 3
    assert zeta(3) != zeta(3, 2)
    assert Cyclo.integer(5) == Cyclo.integer(5, 12)


def test_invert_examples():
    assert Cyclo.integer(-1).invert() == Cyclo.integer(-1)
    assert zeta(3).invert() == zeta(3, 2)
    d = zeta(3, 2) - zeta(3)
    assert d.invert() == (zeta(3) - zeta(3, 2)) / 3
    with pytest.raises(ZeroDivisionError):
        Cyclo.zero().invert()


def test_invert_random():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.choice([3, 4, 5, 6, 8, 12, 20])
        v = [rng.randrange(-5, 6) for _ in range(m)]
        a = Cyclo(m, v, rng.randrange(1, 5))
        if a.is_zero():
            continue
        assert a * a.invert() == Cyclo.integer(1)


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(300):
        m = rng.choice([2, 3, 4, 6, 10, 12, 15, 60])
        def rand(mm):
            return Cyclo(mm, [rng.randrange(-4, 5) for _ in range(mm)], rng.randrange(1, 4))
        a, b, c = rand(m), rand(rng.choice([m, 2 * m])), rand(m)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)


def test_canonical_idempotent():
    a = Cyclo(12, [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8], 6)
    b = Cyclo(a.m, list(a.num), a.den)
    assert a.num == b.num and a.den == b.den


def test_embed_complex():
    assert abs(Cyclo.integer(-1).embed_complex() - (-1)) < 1e-12
    assert abs(zeta(4).embed_complex() - 1j) < 1e-12
    v = (zeta(3, 2) - zeta(3)).embed_complex()
    assert abs(v - (-1.7320508075688772j)) < 1e-9


def test_embed_complex_homomorphism():
    rng = random.Random(3)
    for _ in range(50):
        m = rng.choice([5, 8, 12])
        a = Cyclo(m, [rng.randrange(-3, 4) for _ in range(m)])
        b = Cyclo(m, [rng.randrange(-3, 4) for _ in range(m)])
        assert abs((a * b).embed_complex() - a.embed_complex() * b.embed_complex()) < 1e-9
        assert abs((a + b).embed_complex() - (a.embed_complex() + b.embed_complex())) < 1e-9


def test_in_subfield():
    # rational integers lie in every subfield
    assert Cyclo.integer(-1, 6).in_subfield(1)
    assert Cyclo.integer(-1, 6).in_subfield(2)
    # zeta_3 in Q(zeta_6) lies in Q(zeta_3) but not Q(zeta_2)
    z3 = zeta(6, 2)
    assert z3.in_subfield(3)
    assert not z3.in_subfield(2)
    # an element written over conductor 15 that actually lies in Q(zeta_5)
    z5 = zeta(15, 9)  # zeta_5^3
    assert z5.in_subfield(5)
    assert not z5.in_subfield(3)
    with pytest.raises(ValueError):
        zeta(6).in_subfield(4)


def test_powers_and_division():
    assert zeta(5) ** 5 == Cyclo.integer(1)
    assert zeta(5) ** -1 == zeta(5, 4)
    assert (Cyclo.integer(7) / Cyclo.integer(2)).as_rational() == Fraction(7, 2)


def test_json_shape():
    js = (zeta(3, 2) - zeta(3)).to_json()
    assert js["m"] == 3 and js["den"] == 1
    assert len(js["num"]) == 3

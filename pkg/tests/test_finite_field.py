import random

import pytest
import sympy

from commontorsion.algebra.finite_field import GF, fixed_modulus, is_irreducible_mod_p


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (5, 4), (7, 3), (13, 6), (11, 12)])
def test_fixed_modulus_is_irreducible(p, m):
    f = fixed_modulus(p, m)
    assert len(f) == m + 1 and f[-1] == 1
    assert is_irreducible_mod_p(f, p)
    poly = sympy.Poly(list(reversed(f)), sympy.Symbol("x"), modulus=p)
    assert poly.is_irreducible


def test_fixed_modulus_is_deterministic():
    assert fixed_modulus(13, 8) == fixed_modulus(13, 8)
    assert GF(13, 8) is GF(13, 8)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (7, 3), (2, 4)])
def test_field_axioms_exhaustive_units(p, m):
    F = GF(p, m)
    elems = list(F.elements())
    assert len(elems) == p ** m
    one = F.one
    for a in elems:
        if a:
            assert a * a.inverse() == one
        assert a ** (p ** m) == a
        assert a.frobenius(m) == a


def test_field_ring_laws_random():
    rng = random.Random(5)
    for p, m in [(5, 3), (13, 4), (101, 2)]:
        F = GF(p, m)
        for _ in range(200):
            a, b, c = F.random(rng), F.random(rng), F.random(rng)
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a - a == F.zero
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@pytest.mark.parametrize("p,m", [(5, 1), (7, 2), (13, 3), (3, 4)])
def test_square_roots(p, m):
    F = GF(p, m)
    rng = random.Random(p * m)
    for _ in range(60):
        a = F.random(rng)
        sq = a * a
        assert sq.is_square()
        r = sq.sqrt()
        assert r * r == sq
    nr = F.quadratic_nonresidue()  # raw coefficient tuple
    assert not F.is_square(nr)


def test_prime_field_embedding():
    F = GF(7, 3)
    x = F(3)
    assert x.in_prime_field() and int(x) == 3
    assert not F.gen.in_prime_field()

import random

import pytest

from commontorsion.algebra.finite_field import GF
from commontorsion.algebra.forms import TernaryForm, monomials
from commontorsion.errors import RingMismatch
from commontorsion.witt2 import (W2Element, carry_coefficients, from_integers_mod_p2,
                                 to_integers_mod_p2, w2_add, w2_frobenius, w2_mul, w2_scalar,
                                 w2_scalar_p)


def W(p, a0, a1, m=1):
    return W2Element.over(GF(p, m), a0, a1)


def rand_w(F, rng):
    return W2Element(F.random(rng), F.random(rng))


def test_addition_examples():
    assert w2_add(W(3, 1, 0), W(3, 1, 0)) == W(3, 2, 1)
    assert W(5, 3, 0) + W(5, 0, 4) == W(5, 3, 4)
    assert W(5, 0, 0) + W(5, 2, 3) == W(5, 2, 3)


def test_multiplication_examples():
    assert w2_mul(W(3, 0, 1), W(3, 0, 1)) == W(3, 0, 0)
    assert W(7, 3, 5) * W(7, 1, 0) == W(7, 3, 5)
    assert W(3, 2, 1) * W(3, 2, 0) == W(3, 1, 2)


def test_frobenius_examples():
    assert w2_frobenius(W(3, 2, 1)) == W(3, 2, 1)
    F9 = GF(3, 2)
    g = F9.gen
    assert W2Element(g, F9.zero).frobenius() == W2Element(g ** 3, F9.zero)
    assert W(3, 0, 0).frobenius() == W(3, 0, 0)


def test_scalar_examples():
    assert w2_scalar_p(W(3, 1, 0)) == W(3, 0, 1)
    assert w2_scalar(3, W(3, 1, 0)) == W(3, 0, 1)
    assert w2_scalar(9, W(3, 1, 0)) == W(3, 0, 0)
    x = W(5, 2, 4)
    assert w2_scalar(1, x) == x and 5 * (5 * x) == W(5, 0, 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isomorphism_with_integers_mod_p_squared(p):
    """(a0, a1) -> a0^p + p a1 is a ring isomorphism W_2(F_p) -> Z/p^2."""
    elems = [W(p, a0, a1) for a0 in range(p) for a1 in range(p)]
    images = {to_integers_mod_p2(u) for u in elems}
    assert images == set(range(p * p))
    for u in elems:
        assert from_integers_mod_p2(to_integers_mod_p2(u), p) == u
        for v in elems:
            assert to_integers_mod_p2(u + v) == (to_integers_mod_p2(u) + to_integers_mod_p2(v)) % (p * p)
            assert to_integers_mod_p2(u * v) == to_integers_mod_p2(u) * to_integers_mod_p2(v) % (p * p)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 2), (7, 1), (11, 2)])
def test_ring_axioms(p, m):
    F = GF(p, m)
    rng = random.Random(p * 10 + m)
    one, zero = W2Element(F.one, F.zero), W2Element(F.zero, F.zero)
    for _ in range(200):
        a, b, c = rand_w(F, rng), rand_w(F, rng), rand_w(F, rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert a + (-a) == zero and a - b + b == a
        assert (a * b).reduction() == a.reduction() * b.reduction()
        assert (a + b).reduction() == a.reduction() + b.reduction()
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_teichmuller_is_multiplicative_not_additive():
    F = GF(3, 1)
    t = W2Element.teichmuller
    assert t(F(1)) + t(F(1)) == W(3, 2, 1) != t(F(2))
    F = GF(5, 2)
    rng = random.Random(1)
    for _ in range(50):
        a, b = F.random(rng), F.random(rng)
        assert t(a) * t(b) == t(a * b)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_teichmuller_plus_shift_recovers_both_coordinates(p):
    F = GF(p, 2)
    rng = random.Random(p)
    for _ in range(500 // 4):
        a0, a1 = F.random(rng), F.random(rng)
        assert W2Element(a0, F.zero) + W2Element(F.zero, a1) == W2Element(a0, a1)


def test_p_kills_the_second_layer():
    for p in (3, 5, 7, 11):
        one = W(p, 1, 0)
        assert w2_scalar(p, one) == W(p, 0, 1)
        assert w2_scalar(p * p, one) == W(p, 0, 0)


def test_carry_coefficients_match_binomials():
    from math import comb
    for p in (3, 5, 7):
        assert carry_coefficients(p) == (0,) + tuple(comb(p, i) // p % p for i in range(1, p)) + (0,)


def _evaluate(form, point, F):
    """Evaluate an integer ternary form at Witt points using W_2 arithmetic only."""
    total = W2Element(F.zero, F.zero)
    for (a, b, c), coeff in form.terms.items():
        term = w2_scalar(coeff, W2Element(F.one, F.zero))
        for base, e in zip(point, (a, b, c)):
            for _ in range(e):
                term = term * base
        total = total + term
    return total


@pytest.mark.parametrize("p", [3, 5])
def test_map_with_zero_differential_ignores_second_coordinate(p):
    """phi = g^p + p h has zero differential mod p, so phi(a0, a1) = phi(a0, 0)."""
    F = GF(p, 2)
    rng = random.Random(7 * p)
    N = p * p
    for _ in range(10):
        g = TernaryForm({m: rng.randrange(p) for m in monomials(1)}, 1, N)
        h = TernaryForm({m: rng.randrange(p) for m in monomials(p)}, p, N)
        phi = g ** p + h.scale(p)
        for _ in range(5):
            pt = [rand_w(F, rng) for _ in range(3)]
            flat = [W2Element(w.a0, F.zero) for w in pt]
            assert _evaluate(phi, pt, F) == _evaluate(phi, flat, F)


def test_mismatched_rings_rejected():
    with pytest.raises(RingMismatch):
        W(5, 1, 0) + W(7, 1, 0)

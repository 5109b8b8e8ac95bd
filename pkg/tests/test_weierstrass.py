import random
from fractions import Fraction

import pytest

from commontorsion.algebra.finite_field import GF
from commontorsion.algebra.poly import QQ, Poly, squarefree_part
from commontorsion.errors import PointNotOnCurve
from commontorsion.ff_torsion import count_points
from commontorsion.weierstrass import (INFINITY, CurvePoint, ReductionTag, WeierstrassCurve,
                                       division_poly_x, hasse_invariant, invariants, is_supersingular,
                                       minimal_at_p, point_add, point_mul_n, point_order,
                                       reduction_type)

short = WeierstrassCurve.short
E3 = WeierstrassCurve(1, 0, 0, 0, 11 ** 11)


def test_invariant_examples():
    inv = invariants(short(-1, 0))
    assert (inv.c4, inv.c6, inv.disc, inv.j) == (48, 0, 64, 1728)
    inv = invariants(short(0, 1))
    assert (inv.c4, inv.disc, inv.j) == (0, -432, 0)
    a6 = 11 ** 11
    inv = invariants(E3)
    assert inv.c4 == 1 and inv.disc == -a6 * (1 + 432 * a6)


def test_classical_conductor_11_model():
    inv = invariants(WeierstrassCurve(0, -1, 1, -10, -20))
    assert inv.disc == -11 ** 5


def random_curve(rng):
    while True:
        c = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(5)]
        E = WeierstrassCurve(*c)
        if not E.is_singular():
            return E


def test_c4_c6_identity_and_j_invariance():
    rng = random.Random(11)
    for _ in range(50):
        E = random_curve(rng)
        inv = invariants(E)
        assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc
        u = Fraction(rng.choice([1, -1, 2, 3, Fraction(1, 2)]))
        r, s, t = (Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3))
        assert E.change_coordinates(u, r, s, t).j == E.j


def test_minimal_models():
    assert minimal_at_p(short(-625, 0), 5) == short(-1, 0)
    assert minimal_at_p(short(-1, 0), 7) == short(-1, 0)
    # c4 = 0, v(c6) = 33: the minimality criterion allows one rescaling by 11^6
    assert minimal_at_p(short(0, 11 ** 11), 11) == short(0, 11 ** 5)


def test_reduction_types():
    assert reduction_type(short(-1, 0), 5).tag == ReductionTag.GOOD_ORDINARY
    rt = reduction_type(E3, 11)
    assert rt.tag == ReductionTag.MULTIPLICATIVE and rt.v_disc_min == 11
    assert reduction_type(short(0, 1), 5).tag == ReductionTag.GOOD_SUPERSINGULAR
    assert reduction_type(short(0, 11), 11).tag == ReductionTag.ADDITIVE


def test_hasse_examples():
    assert is_supersingular(short(0, 1).reduce_mod(5))
    assert count_points(short(0, 1).reduce_mod(5)) == 6
    assert hasse_invariant(short(1, 0).reduce_mod(5)) == GF(5)(2)
    assert not is_supersingular(short(1, 0).reduce_mod(5))
    assert not is_supersingular(short(0, 1).reduce_mod(7))


def test_group_law_examples():
    E = short(0, 1)
    P = CurvePoint(Fraction(0), Fraction(1))
    assert point_add(E, P, INFINITY) == P
    assert point_mul_n(E, P, 3) == INFINITY and point_order(E, P, 10) == 3
    E2 = short(-1, 0)
    for x0 in (-1, 0, 1):
        assert point_mul_n(E2, CurvePoint(Fraction(x0), Fraction(0)), 2) == INFINITY
    with pytest.raises(PointNotOnCurve):
        point_add(E, CurvePoint(Fraction(1), Fraction(1)), P)


def test_group_law_associative_over_ff():
    F = GF(13)
    E = short(2, 7, F)
    pts = [CurvePoint(x, y) for x in F.elements() for y in F.elements()
           if y * y == x ** 3 + E.a4 * x + E.a6]
    rng = random.Random(2)
    for _ in range(100):
        P, Q, R = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert point_add(E, point_add(E, P, Q), R) == point_add(E, P, point_add(E, Q, R))


def _proportional(f: Poly, g: Poly):
    return f.degree == g.degree and f.monic() == g.monic()


def test_division_polynomial_examples():
    a, b = Fraction(2, 3), Fraction(-1, 5)
    expected = Poly([-a * a, 12 * b, 6 * a, 0, 3], QQ)
    assert _proportional(division_poly_x(short(a, b), 3), expected)
    assert _proportional(division_poly_x(short(0, 1), 3), Poly([0, 12, 0, 0, 3], QQ))
    assert _proportional(division_poly_x(short(-1, 0), 2), Poly([0, -1, 0, 1], QQ))


def test_division_polynomial_roots_are_torsion():
    F = GF(11)
    E = short(3, 5, F)
    for n in (3, 4, 5):
        psi = division_poly_x(E, n)
        for x0 in F.elements():
            if psi(x0):
                continue
            rhs = x0 ** 3 + E.a4 * x0 + E.a6
            if rhs.is_square():
                P = CurvePoint(x0, rhs.sqrt())
                assert point_mul_n(E, P, n) == INFINITY


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_division_polynomials_stay_squarefree_at_good_primes(p):
    rng = random.Random(p)
    checked = 0
    while checked < 25:
        a, b = rng.randint(-30, 30), rng.randint(-30, 30)
        E = short(a, b)
        if E.is_singular() or invariants(E).disc % p == 0:
            continue
        checked += 1
        Ep = E.reduce_mod(p)
        for n in range(2, 7):
            if n % p == 0:
                continue
            psi = division_poly_x(Ep, n)
            assert squarefree_part(psi).degree == psi.degree

import math

import pytest

from commontorsion.algebra.finite_field import GF
from commontorsion.errors import CoverageError
from commontorsion.ff_torsion import (count_over_extension, count_points, frobenius_order_mod,
                                      orbit_min_polys, torsion_enumerate_ff, trace_of_frobenius)
from commontorsion.weierstrass import CurvePoint, WeierstrassCurve, point_order

short = WeierstrassCurve.short


def brute_count(E):
    F = E.field
    n = 1
    for x in F.elements():
        for y in F.elements():
            if y * y + E.a1 * x * y + E.a3 * y == x ** 3 + E.a2 * x * x + E.a4 * x + E.a6:
                n += 1
    return n


@pytest.mark.parametrize("l", [5, 7, 11, 13])
def test_point_counts_match_brute_force_and_hasse(l):
    F = GF(l)
    for a in range(l):
        for b in range(l):
            E = short(a, b, F)
            if (4 * a ** 3 + 27 * b * b) % l == 0:
                continue
            n = count_points(E)
            assert n == brute_count(E)
            assert abs(l + 1 - n) <= 2 * math.isqrt(l) + 1
            assert (l + 1 - n) ** 2 <= 4 * l


def test_extension_counts_match_brute_force():
    for a, b in [(1, 1), (2, 1), (0, 1)]:
        E = short(a, b, GF(5))
        t = trace_of_frobenius(E)
        E2 = short(a, b, GF(5, 2))
        assert count_over_extension(t, 5, 2) == brute_count(E2)


def test_long_model_count():
    E = WeierstrassCurve(1, 2, 3, 4, 0, field=GF(7))
    assert count_points(E) == brute_count(E)


def test_enumeration_examples():
    enum = torsion_enumerate_ff(short(0, 1, GF(5)), 2)
    xs = enum.by_order[2]
    assert len(xs) == 3
    assert [int(x) for x in xs if x.in_prime_field()] == [4]
    assert orbit_min_polys(xs) and sorted(orbit_min_polys(xs).values()) == [1, 2]
    enum = torsion_enumerate_ff(short(1, 0, GF(5)), 2)
    assert sorted(int(x) for x in enum.by_order[2]) == [0, 2, 3]
    assert torsion_enumerate_ff(short(1, 0, GF(5)), 1).by_order == {}


def test_enumeration_excludes_multiples_of_l():
    enum = torsion_enumerate_ff(short(1, 1, GF(5)), 6)
    assert enum.excluded == [5]
    assert enum.complete


def test_enumeration_agrees_with_group_law_for_rational_x():
    """Points with x in F_13 live over F_169; compute their orders there directly."""
    F, L = GF(13), GF(13, 2)
    E = short(2, 7, F)
    EL = short(2, 7, L)
    enum = torsion_enumerate_ff(E, 8)
    for d in range(2, 9):
        expected = set()
        for x in range(13):
            rhs = L(x) ** 3 + EL.a4 * L(x) + EL.a6
            P = CurvePoint(L(x), rhs.sqrt())
            if point_order(EL, P, 20) == d:
                expected.add(x)
        found = {int(x) for x in enum.by_order.get(d, ()) if x.in_prime_field()}
        assert found == expected


def test_coverage_cap():
    E = short(1, 1, GF(101))
    with pytest.raises(CoverageError):
        from commontorsion.ff_torsion import torsion_x_by_order
        torsion_x_by_order(E, 7, max_extension=1)
    enum = torsion_enumerate_ff(E, 7, max_extension=1)
    assert not enum.complete


def test_frobenius_order():
    # X^2 - aX + l has order dividing the exponent needed to see all n-torsion
    E = short(1, 1, GF(7))
    a = trace_of_frobenius(E)
    for n in (2, 3, 4, 5):
        k = frobenius_order_mod(a, 7, n)
        assert count_over_extension(a, 7, k) % (n * n) == 0

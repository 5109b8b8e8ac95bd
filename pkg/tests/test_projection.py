import random

import pytest

from commontorsion.algebra import intpoly as ip
from commontorsion.algebra.forms import BinaryForm
from commontorsion.errors import InvalidArgument, PreconditionViolated
from commontorsion.projection import (Mobius, StandardProjection, branch_disjoint_generic,
                                      branch_form, check_assumption_mixed, check_assumption_simplest)
from commontorsion.weierstrass import ReductionTag, WeierstrassCurve, reduction_type

short = WeierstrassCurve.short


def proj(a, b, m=None, label=""):
    return StandardProjection.from_curve(short(a, b), m, label)


def quartic(*coeffs):
    return BinaryForm(list(coeffs), 4)


def test_branch_form_examples():
    assert branch_form(proj(-1, 0)).projectively_equal(quartic(0, -1, 0, 1, 0))
    assert branch_form(proj(-4, 0)).projectively_equal(quartic(0, -4, 0, 1, 0))
    shifted = branch_form(proj(-1, 0, Mobius(1, 1, 0, 1)))
    assert shifted.projectively_equal(quartic(0, 2, -3, 1, 0))


def test_long_model_projection_matches_its_x_coordinate():
    E = WeierstrassCurve(1, 0, 0, 0, 11 ** 11)
    P = StandardProjection.from_curve(E)
    # the 2-torsion x-coordinates of the long model are the roots of 4x^3 + b2 x^2 + 2 b4 x + b6
    inv = E._invariants()
    cubic = BinaryForm([inv.b6, 2 * inv.b4, inv.b2, 4, 0], 4)
    assert branch_form(P).projectively_equal(cubic)


def random_mobius(rng):
    while True:
        a, b, c, d = (rng.randint(-7, 7) for _ in range(4))
        if a * d - b * c:
            return Mobius(a, b, c, d)


def same_point(u, v):
    return u[0] * v[1] == u[1] * v[0]


def test_mobius_group_structure():
    rng = random.Random(4)
    n = Mobius(2, -1, 3, 1)
    for _ in range(50):
        m = random_mobius(rng)
        assert m @ m.inverse() == Mobius.identity()
        assert same_point((m @ n).apply(5, 1), m.apply(*n.apply(5, 1)))
    with pytest.raises(InvalidArgument):
        Mobius(1, 2, 2, 4)


def test_branch_form_equivariance():
    rng = random.Random(8)
    P = proj(-2, 3)
    for _ in range(50):
        m = random_mobius(rng)
        moved = branch_form(StandardProjection.from_curve(P.curve, m))
        assert moved.projectively_equal(m.transport(branch_form(P)))


def test_branch_quartic_squarefree_iff_nonsingular_over_f5():
    p = 5
    for a in range(p):
        for b in range(p):
            cubic = [b, a, 0, 1]
            squarefree = len(ip.fp_gcd(cubic, ip.fp_derivative(cubic, p), p)) == 1
            assert squarefree == ((4 * a ** 3 + 27 * b * b) % p != 0)


def test_generic_disjointness_examples(demo_pair, twisted_pair):
    comp = branch_disjoint_generic(*demo_pair)
    assert not comp.disjoint and not comp.sets_equal and comp.common_points == 2
    same = branch_disjoint_generic(demo_pair[0], demo_pair[0])
    assert not same.disjoint and same.sets_equal
    comp = branch_disjoint_generic(*twisted_pair)
    assert comp.disjoint and comp.resultant != 0
    # images of {0, 2, -2, inf} under (2x + 3)/(x - 5)
    m = twisted_pair[1].twist
    images = {m.apply(x, 1) for x in (0, 2, -2)} | {m.apply(1, 0)}
    from fractions import Fraction
    assert {Fraction(a, c) for a, c in images} == {Fraction(-3, 5), Fraction(-7, 3), Fraction(1, 7), 2}


def test_simplest_check_follows_the_resultant(twisted_pair):
    P1, P2 = twisted_pair
    for p in (5, 7, 11, 13, 17, 19, 23, 29):
        if not (reduction_type(P1.curve, p).is_good and reduction_type(P2.curve, p).is_good):
            continue
        chk = check_assumption_simplest(P1, P2, p)
        assert chk.passed == (chk.resultant % p != 0 and all(chk.quartics_separable))
        if chk.passed:
            assert branch_disjoint_generic(P1, P2).disjoint
    assert check_assumption_simplest(P1, P2, 11).passed
    assert not check_assumption_simplest(P1, P2, 13).passed  # det of the twist is -13


def test_shared_infinity_fails_everywhere(demo_pair):
    for p in (5, 7, 11, 13):
        assert not check_assumption_simplest(*demo_pair, p).passed


def test_simplest_needs_good_reduction(demo_pair):
    with pytest.raises(PreconditionViolated):
        check_assumption_simplest(*demo_pair, 3)
    E3 = StandardProjection.from_curve(WeierstrassCurve(1, 0, 0, 0, 11 ** 11))
    with pytest.raises(PreconditionViolated):
        check_assumption_simplest(E3, demo_pair[0], 11)


def test_mixed_report(mixed_pair):
    rep = check_assumption_mixed(*mixed_pair, 11)
    assert rep.passed
    e3 = rep.curves[0]
    assert e3.tag == ReductionTag.MULTIPLICATIVE
    x0 = e3.node
    # the local short cubic is (x - x0)^2 (x + 2 x0) mod 11
    A, B, _ = mixed_pair[0].local_data(11)
    a, b = A.numerator * pow(A.denominator, -1, 11) % 11, B.numerator * pow(B.denominator, -1, 11) % 11
    assert (-3 * x0 * x0 - a) % 11 == 0 and (2 * x0 ** 3 - b) % 11 == 0
    assert rep.describe()["E3"]["node_image"] == "0"


def test_mixed_report_flags_node_on_branch_point(mixed_pair):
    E3 = mixed_pair[0]
    # x -> 1/x sends the partner's branch point at infinity onto the node image 0
    partner = StandardProjection.from_curve(short(1, 1), Mobius(0, 1, 1, 0), "F")
    rep = check_assumption_mixed(E3, partner, 11)
    assert not rep.passed and not rep.nodes_avoid_branch_points


def test_mixed_needs_a_multiplicative_curve(twisted_pair):
    with pytest.raises(PreconditionViolated):
        check_assumption_mixed(*twisted_pair, 11)

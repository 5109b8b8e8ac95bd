import pytest

from commontorsion.algebra.poly import QQ, Poly, squarefree_part
from commontorsion.errors import BranchLociCoincide, InadmissibleAuxiliaryPrime
from commontorsion.projection import Mobius, StandardProjection
from commontorsion.torsion_search import (common_projective_torsion, ff_oracle_common, is_separating,
                                          separating_primes, torsion_x_poly)
from commontorsion.weierstrass import WeierstrassCurve

short = WeierstrassCurve.short


def test_torsion_x_poly_examples():
    f, inf = torsion_x_poly(StandardProjection.from_curve(short(-1, 0)), 2)
    assert f.monic() == Poly([0, -1, 0, 1], QQ) and inf
    f, inf = torsion_x_poly(StandardProjection.from_curve(short(0, 1)), 3)
    expected = squarefree_part(Poly([1, 0, 0, 1], QQ) * Poly([0, 12, 0, 0, 3], QQ))
    assert f.monic() == expected.monic() and inf
    # x / (x + 2) sends infinity to 1 and no 2-torsion point to infinity
    f, inf = torsion_x_poly(StandardProjection.from_curve(short(-1, 0), Mobius(1, 0, 1, 2)), 2)
    assert not inf and f.degree == 4
    # images: 0 -> 0, 1 -> 1/3, -1 -> -1, and O -> 1
    assert f.monic() == Poly.from_roots([0, QQ(1) / 3, -1, 1], QQ)


def test_demo_pair(demo_pair):
    rep = common_projective_torsion(*demo_pair, 2)
    assert rep.count == 2 and rep.infinity_is_common
    assert [f.coeffs for f in rep.factors] == [(0, 1)]
    assert rep.common_orders() == [(1, 1), (2, 2)]


def test_identical_projections_rejected(demo_pair):
    with pytest.raises(BranchLociCoincide):
        common_projective_torsion(demo_pair[0], demo_pair[0], 3)


def test_oracle_examples(demo_pair):
    assert ff_oracle_common(*demo_pair, 2, 7) == 2
    assert ff_oracle_common(*demo_pair, 1, 7) == 1
    with pytest.raises(InadmissibleAuxiliaryPrime):
        ff_oracle_common(*demo_pair, 5, 5)


def test_twisted_pair_matches_oracle(twisted_pair):
    rep = common_projective_torsion(*twisted_pair, 6)
    primes = separating_primes(*twisted_pair, 6, range(7, 200), count=2)
    assert len(primes) == 2
    for l in primes:
        assert ff_oracle_common(*twisted_pair, 6, l) == rep.count


def test_non_separating_prime_can_overcount(twisted_pair):
    """At l = 11 distinct images collide mod l; the separating filter rejects it."""
    rep = common_projective_torsion(*twisted_pair, 6)
    assert ff_oracle_common(*twisted_pair, 6, 11) > rep.count
    assert not is_separating(*twisted_pair, 6, 11)


def test_monotone_in_n(twisted_pair, demo_pair):
    for pair in (demo_pair, twisted_pair):
        counts = [common_projective_torsion(*pair, n).count for n in range(1, 7)]
        assert counts == sorted(counts)


def test_factors_divide_both_loci(demo_pair):
    P1, P2 = demo_pair
    N = 6
    rep = common_projective_torsion(P1, P2, N)
    f1, _ = torsion_x_poly(P1, N)
    f2, _ = torsion_x_poly(P2, N)
    for fac in rep.factors:
        g = fac.as_poly()
        assert g.divides(f1) and g.divides(f2)


def test_symmetry(demo_pair, twisted_pair):
    for P1, P2 in (demo_pair, twisted_pair):
        a = common_projective_torsion(P1, P2, 4)
        b = common_projective_torsion(P2, P1, 4)
        assert a.count == b.count
        assert sorted(f.coeffs for f in a.factors) == sorted(f.coeffs for f in b.factors)
        assert sorted(a.common_orders()) == sorted((j, i) for i, j in b.common_orders())

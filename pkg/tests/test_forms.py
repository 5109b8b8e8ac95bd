import itertools
import random

import pytest
import sympy

from commontorsion.algebra.finite_field import GF
from commontorsion.algebra.forms import (BinaryForm, TernaryForm, integer_resultant, monomials,
                                         resultant, transport_int)
from commontorsion.algebra.poly import Poly, roots_in_extension
from commontorsion.errors import UndefinedResultant
from commontorsion.projection import Mobius

x, y, z = sympy.symbols("x y z")


def bf(*coeffs):
    """Binary form from X^0 Z^d, X^1 Z^(d-1), ... coefficients."""
    return BinaryForm(list(coeffs), len(coeffs) - 1)


def test_resultant_examples():
    F = bf(0, -1, 0, 1, 0)  # XZ(X - Z)(X + Z)
    G = bf(0, -4, 0, 1, 0)
    assert resultant(F, G) == 0
    assert abs(resultant(bf(0, 1), bf(1, 0))) == 1
    assert resultant(bf(-1, 1), bf(-2, 1)) != 0
    with pytest.raises(UndefinedResultant):
        resultant(bf(0, 0), bf(1, 1))


def test_resultant_matches_sympy_on_dehomogenised_forms():
    rng = random.Random(3)
    for _ in range(40):
        f = [rng.randint(-9, 9) for _ in range(4)] + [rng.randint(1, 9)]
        g = [rng.randint(-9, 9) for _ in range(3)] + [rng.randint(1, 9)]
        ref = sympy.resultant(sympy.Poly(list(reversed(f)), x), sympy.Poly(list(reversed(g)), x))
        assert abs(resultant(bf(*f), bf(*g))) == abs(ref)


def _common_projective_root(f, g, p):
    """Direct search: both vanish at infinity, or a root of f over F_p-bar is a root of g."""
    if f[-1] % p == 0 and g[-1] % p == 0:
        return True
    F = GF(p, 1)
    pf, pg = Poly(f, F), Poly(g, F)
    if pf.degree < 1:
        return False
    return any(not pg.eval_in(r) for r, _ in roots_in_extension(pf, 4))


def test_resultant_vanishes_iff_common_root_exhaustive_f3():
    p = 3
    forms = [c for c in itertools.product(range(p), repeat=3) if any(c)]
    for f in forms:
        for g in forms:
            res = integer_resultant(BinaryForm(list(f), 2), BinaryForm(list(g), 2))
            assert (res % p == 0) == _common_projective_root(list(f), list(g), p)


@pytest.mark.parametrize("p", [5, 7])
def test_resultant_vanishes_iff_common_root_random_quartics(p):
    rng = random.Random(p)
    for _ in range(150):
        f = [rng.randrange(p) for _ in range(5)]
        g = [rng.randrange(p) for _ in range(rng.randint(2, 5))]
        if not any(f) or not any(g):
            continue
        res = integer_resultant(BinaryForm(f, 4), BinaryForm(g, len(g) - 1))
        assert (res % p == 0) == _common_projective_root(f, g, p)


def test_transport_moves_roots():
    # F = X (X - Z); m(x) = x + 1 sends the roots {0, 1} to {1, 2}
    out = transport_int([0, -1, 1], Mobius(1, 1, 0, 1))
    assert BinaryForm(out, 2).projectively_equal(BinaryForm([2, -3, 1], 2))


def test_ternary_compose_matches_sympy():
    rng = random.Random(9)
    N = 49
    for _ in range(10):
        e = TernaryForm({m: rng.randrange(N) for m in monomials(3)}, 3, N)
        subs = [TernaryForm({m: rng.randrange(N) for m in monomials(2)}, 2, N) for _ in range(3)]
        ours = e.compose(subs)
        to_expr = lambda F: sum(c * x ** a * y ** b * z ** d for (a, b, d), c in F.terms.items())
        ref = sympy.Poly(sympy.expand(to_expr(e).subs({x: to_expr(subs[0]), y: to_expr(subs[1]),
                                                       z: to_expr(subs[2])}, simultaneous=True)), x, y, z)
        assert {m: int(c) % N for m, c in ref.terms() if int(c) % N} == {m: v for m, v in ours.terms.items() if v}


def test_ternary_basics():
    e = TernaryForm({(0, 2, 1): 1, (3, 0, 0): -1, (0, 0, 3): -1}, 3, 25)
    assert e.partial(1) == TernaryForm({(0, 1, 1): 2}, 2, 25)
    assert e.inflate(5).degree == 15
    assert e.evaluate((1, 1, 1)) % 25 == 24
    assert TernaryForm.from_vector(e.vector(), 3, 25) == e
    assert len(monomials(3)) == 10 and monomials(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

import random

import numpy as np
import pytest
import sympy
from sympy.polys.matrices import DomainMatrix

from commontorsion.algebra.linalg import LinearSystem, rank_mod_p, solve_affine


def system(rows, rhs, p):
    return LinearSystem(np.array(rows, dtype=np.int64), np.array(rhs, dtype=np.int64), p)


def test_identity():
    sol, ker = solve_affine(system(np.eye(3, dtype=int), [1, 2, 3], 5))
    assert list(sol) == [1, 2, 3] and ker == []


def test_zero_matrix_unsolvable():
    sol, ker = solve_affine(system([[0, 0]], [1], 7))
    assert sol is None


def test_one_by_two():
    sol, ker = solve_affine(system([[1, 1]], [0], 3))
    assert list(sol) == [0, 0]
    assert len(ker) == 1
    v = ker[0]
    # spans the same line as [1, 2]
    assert (v[0] * 2 - v[1]) % 3 == 0 and any(v)


@pytest.mark.parametrize("p", [5, 7, 13, 101])
def test_solutions_and_kernel_satisfy_system(p):
    rng = random.Random(p)
    for _ in range(30):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        A = np.array([[rng.randrange(p) for _ in range(c)] for _ in range(r)], dtype=np.int64)
        x = np.array([rng.randrange(p) for _ in range(c)], dtype=np.int64)
        b = A @ x % p
        sol, ker = solve_affine(LinearSystem(A, b, p))
        assert sol is not None
        assert np.all((A @ sol - b) % p == 0)
        for v in ker:
            assert np.all((A @ ((sol + v) % p) - b) % p == 0)
        ref = DomainMatrix([[sympy.GF(p)(int(a)) for a in row] for row in A], (r, c), sympy.GF(p))
        assert rank_mod_p(A, p) == ref.rank()
        assert len(ker) == c - ref.rank()

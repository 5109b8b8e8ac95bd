"""Gauss-Jordan elimination over F_p with numpy int64 arrays."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument
from .rational import _check_prime


@dataclass(frozen=True)
class LinearSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    p: int

    def __post_init__(self):
        _check_prime(self.p)
        if self.p >= 2 ** 31:
            raise InvalidArgument("modulus too large for int64 elimination")
        if self.matrix.ndim != 2 or self.rhs.shape != (self.matrix.shape[0],):
            raise InvalidArgument("matrix and right-hand side dimensions disagree")

    @property
    def shape(self):
        return self.matrix.shape


def rref_mod_p(M: np.ndarray, p: int, ncols: int | None = None):
    """Reduced row echelon form (in place on a copy); returns (R, pivot columns).

    Only the first ``ncols`` columns are used as pivot candidates.
    """
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    ncols = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(M, p: int) -> int:
    return len(rref_mod_p(M, p)[1])


def solve_affine(system: LinearSystem):
    """Return (particular solution or None, kernel basis) for A s = b over F_p."""
    A, b, p = system.matrix, system.rhs, system.p
    rows, n = A.shape
    aug = np.concatenate([np.asarray(A, dtype=np.int64) % p,
                          (np.asarray(b, dtype=np.int64) % p).reshape(-1, 1)], axis=1)
    R, pivots = rref_mod_p(aug, p, ncols=n)
    rank = len(pivots)
    if rank < rows and np.any(R[rank:, n]):
        particular = None
    else:
        particular = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(pivots):
            particular[c] = R[i, n]
    pivot_set = set(pivots)
    kernel = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = -R[i, free] % p
        kernel.append(v)
    return particular, kernel

"""Frobenius lifts mod p^2 for plane cubics.

A cubic e over Z/p^2 with smooth reduction admits a lift f + p f' of the
Frobenius f = (x^p, y^p, z^p) preserving it iff

    d + (grad e)(f) . f' - c e == 0  (mod p),   where  e(f) - e^p = p d,

for some forms f' (degree p) and c (degree 3p - 3).  This is linear in the
coefficients of f' and c, so one Gaussian elimination over F_p decides it.
Monomials are ordered graded-lexicographically with x > y > z.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .algebra.forms import TernaryForm, monomials
from .algebra.linalg import LinearSystem, rank_mod_p, solve_affine
from .algebra.rational import _check_prime, valuation_p
from .errors import (InvalidArgument, NotOrdinary, PreconditionViolated, SingularReduction,
                     SoundnessAlarm)
from .weierstrass import ReductionTag, WeierstrassCurve, minimal_at_p, reduction_type

MONOMIAL_ORDER = "grlex(x>y>z)"


def cubic_from_coefficients(coeffs: dict, modulus: int) -> TernaryForm:
    return TernaryForm({tuple(k): int(v) for k, v in coeffs.items()}, 3, modulus)


def weierstrass_cubic(curve: WeierstrassCurve, modulus: int) -> TernaryForm:
    """y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3 mod ``modulus``."""
    def red(c):
        c = Fraction(c)
        return c.numerator * pow(c.denominator, -1, modulus) % modulus

    a1, a2, a3, a4, a6 = curve.coefficients
    terms = {(0, 2, 1): 1, (1, 1, 1): red(a1), (0, 1, 2): red(a3), (3, 0, 0): -1,
             (2, 0, 1): -red(a2), (1, 0, 2): -red(a4), (0, 0, 3): -red(a6)}
    return TernaryForm(terms, 3, modulus)


def is_smooth_cubic(e: TernaryForm, p: int) -> bool:
    """A plane cubic over F_p (p >= 5) is smooth iff its partials generate
    every quartic, i.e. the 45 products monomial(deg 2) * d_i e span 15 dims."""
    ep = e.reduce(p)
    if ep.is_zero():
        return False
    quartics = monomials(4)
    index = {m: i for i, m in enumerate(quartics)}
    rows = []
    for i in range(3):
        de = ep.partial(i)
        for mon in monomials(2):
            row = [0] * 15
            for (a, b, c), v in de.terms.items():
                row[index[(a + mon[0], b + mon[1], c + mon[2])]] += v
            rows.append(row)
    return rank_mod_p(np.array(rows, dtype=np.int64), p) == 15


def cubic_hasse_invariant(e: TernaryForm, p: int) -> int:
    """Coefficient of (xyz)^(p-1) in e^(p-1) mod p: nonzero iff ordinary."""
    ep = e.reduce(p)
    return (ep ** (p - 1)).coefficient((p - 1, p - 1, p - 1)) % p


def is_ordinary_cubic(e: TernaryForm, p: int) -> bool:
    return cubic_hasse_invariant(e, p) != 0


@dataclass(frozen=True)
class LiftProblem:
    e: TernaryForm  # modulo p^2
    p: int
    d: TernaryForm  # modulo p, degree 3p

    def frobenius_base(self):
        N = self.p * self.p
        return tuple(TernaryForm({m: 1}, self.p, N) for m in ((self.p, 0, 0), (0, self.p, 0), (0, 0, self.p)))


def _defect(e: TernaryForm, p: int) -> TernaryForm:
    diff = e.inflate(p) - e ** p
    return diff.divide_exact(p, p)


def assemble_defect(e: TernaryForm, p: int) -> LiftProblem:
    _check_prime(p)
    if p < 5:
        raise InvalidArgument("the lift test needs p >= 5")
    N = p * p
    if e.degree != 3:
        raise InvalidArgument("expected a cubic form")
    if e.modulus != N:
        if e.modulus % p and N % e.modulus:
            raise InvalidArgument("cubic must be given modulo p^2 (or as integers)")
        e = e.lift(N)
    if not is_smooth_cubic(e, p):
        raise SingularReduction(f"the reduction of {e} mod {p} is singular")
    return LiftProblem(e, p, _defect(e, p))


@dataclass
class LiftSolution:
    p: int
    solvable: bool
    kernel_dim: int
    f_prime: tuple | None = None  # three forms of degree p over F_p
    c: TernaryForm | None = None  # degree 3p - 3 over F_p
    unknowns: int = 0
    equations: int = 0
    monomial_order: str = MONOMIAL_ORDER

    def digest(self) -> str:
        if not self.solvable:
            return "none"
        h = hashlib.sha256()
        for form in (*self.f_prime, self.c):
            h.update(repr(sorted(form.terms.items())).encode())
        return h.hexdigest()[:16]


class _Layout:
    """Column layout of the unknowns: [e1 (optional) | f'_x | f'_y | f'_z | c]."""

    def __init__(self, p, with_e1):
        self.p = p
        self.rows = monomials(3 * p)
        self.row_index = {m: i for i, m in enumerate(self.rows)}
        self.e1_mons = monomials(3) if with_e1 else []
        self.fp_mons = monomials(p)
        self.c_mons = monomials(3 * p - 3)
        self.e1_off = 0
        self.fp_off = len(self.e1_mons)
        self.c_off = self.fp_off + 3 * len(self.fp_mons)
        self.ncols = self.c_off + len(self.c_mons)

    def split(self, vec, p):
        nf = len(self.fp_mons)
        e1 = TernaryForm.from_vector(vec[:self.fp_off], 3, p, self.e1_mons) if self.e1_mons else None
        fps = tuple(TernaryForm.from_vector(vec[self.fp_off + k * nf:self.fp_off + (k + 1) * nf], p, p,
                                            self.fp_mons) for k in range(3))
        c = TernaryForm.from_vector(vec[self.c_off:], 3 * p - 3, p, self.c_mons)
        return e1, fps, c


def _build_system(e: TernaryForm, d: TernaryForm, p: int, with_e1: bool):
    L = _Layout(p, with_e1)
    A = np.zeros((len(L.rows), L.ncols), dtype=np.int64)
    ep = e.reduce(p)
    ri = L.row_index
    for k, mon in enumerate(L.e1_mons):
        A[ri[(mon[0] * p, mon[1] * p, mon[2] * p)], L.e1_off + k] += 1
    for i in range(3):
        grad = ep.partial(i).inflate(p)
        base = L.fp_off + i * len(L.fp_mons)
        for k, mon in enumerate(L.fp_mons):
            for (a, b, c), v in grad.terms.items():
                A[ri[(a + mon[0], b + mon[1], c + mon[2])], base + k] += v
    for k, mon in enumerate(L.c_mons):
        for (a, b, c), v in ep.terms.items():
            A[ri[(a + mon[0], b + mon[1], c + mon[2])], L.c_off + k] -= v
    rhs = np.array([-d.coefficient(m) % p for m in L.rows], dtype=np.int64)
    return LinearSystem(A % p, rhs, p), L


def verify_witness(e: TernaryForm, p: int, f_prime, c: TernaryForm) -> bool:
    """Check e(f + p f') - e^p == p c e (mod p^2) by direct expansion."""
    N = p * p
    lifted = []
    for i, fp in enumerate(f_prime):
        base = [0, 0, 0]
        base[i] = p
        F = TernaryForm({tuple(base): 1}, p, N) + fp.lift(N).scale(p)
        lifted.append(F)
    lhs = e.compose(lifted) - e ** p
    rhs = (c.lift(N) * e).scale(p)
    return lhs == rhs


def frobenius_lift_test(problem: LiftProblem) -> LiftSolution:
    p = problem.p
    system, layout = _build_system(problem.e, problem.d, p, with_e1=False)
    particular, kernel = solve_affine(system)
    rows, cols = system.shape
    if particular is None:
        return LiftSolution(p, False, len(kernel), unknowns=cols, equations=rows)
    _, fps, c = layout.split([int(v) for v in particular], p)
    if not verify_witness(problem.e, p, fps, c):
        raise SoundnessAlarm("Frobenius-lift witness failed the mod p^2 identity")
    return LiftSolution(p, True, len(kernel), fps, c, cols, rows)


@dataclass
class CanonicalLiftSpace:
    """Affine space of (e1, f', c) with e_int + p e1 admitting a Frobenius lift."""

    p: int
    e0: TernaryForm
    system: LinearSystem
    layout: _Layout
    particular: np.ndarray | None
    kernel: list
    e1_rank: int

    @property
    def nonempty(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.kernel) if self.nonempty else -1

    def particular_e1(self) -> TernaryForm | None:
        if not self.nonempty:
            return None
        return self.layout.split([int(v) for v in self.particular], self.p)[0]

    def contains_e1(self, e1: TernaryForm) -> bool:
        """Is there a solution whose e1-part equals the given form?"""
        p = self.p
        n1 = self.layout.fp_off
        vec = np.array([e1.coefficient(m) % p for m in self.layout.e1_mons], dtype=np.int64)
        A = self.system.matrix
        rhs = (self.system.rhs - A[:, :n1] @ vec) % p
        sub = LinearSystem(A[:, n1:], rhs, p)
        return solve_affine(sub)[0] is not None


def canonical_lift_space(e0: TernaryForm, p: int) -> CanonicalLiftSpace:
    """All lifts e_int + p e1 of a smooth ordinary cubic over F_p that admit a
    Frobenius lift mod p^2, where e_int has coefficients in [0, p)."""
    _check_prime(p)
    base = TernaryForm(e0.terms, 3, p)
    if not is_smooth_cubic(base, p):
        raise SingularReduction("the cubic is singular mod p")
    if not is_ordinary_cubic(base, p):
        raise NotOrdinary("the cubic is supersingular mod p")
    e_int = base.lift(p * p)
    d = _defect(e_int, p)
    system, layout = _build_system(e_int, d, p, with_e1=True)
    particular, kernel = solve_affine(system)
    n1 = layout.fp_off
    e1_rank = rank_mod_p(np.array([v[:n1] for v in kernel], dtype=np.int64), p) if kernel else 0
    return CanonicalLiftSpace(p, base, system, layout, particular, kernel, e1_rank)


class SplittingTag(str, Enum):
    NON_SPLIT = "NonSplitModP2"
    SPLITS = "SplitsModP2"

    def __str__(self):
        return self.value


@dataclass
class SplittingVerdict:
    tag: SplittingTag
    p: int
    witness: LiftSolution | None
    cubic: TernaryForm

    @property
    def splits(self) -> bool:
        return self.tag == SplittingTag.SPLITS

    @property
    def w_statement(self) -> str:
        return "w = 1" if not self.splits else "w >= 2 (or canonical lift)"


def splitting_verdict(curve: WeierstrassCurve, p: int) -> SplittingVerdict:
    """Frobenius-lift test on the minimal model embedded as a Weierstrass cubic."""
    rt = reduction_type(curve, p)
    if rt.tag == ReductionTag.GOOD_SUPERSINGULAR:
        raise NotOrdinary(f"{curve} is supersingular at {p}")
    if rt.tag != ReductionTag.GOOD_ORDINARY:
        raise PreconditionViolated(f"{curve} has {rt.tag} reduction at {p}")
    model = minimal_at_p(curve, p)
    e = weierstrass_cubic(model, p * p)
    problem = assemble_defect(e, p)
    sol = frobenius_lift_test(problem)
    tag = SplittingTag.SPLITS if sol.solvable else SplittingTag.NON_SPLIT
    return SplittingVerdict(tag, p, sol, e)


@dataclass(frozen=True)
class TateParameterCheck:
    p: int
    v_q: int
    pth_power_necessary: bool


def tate_parameter_valuation(curve: WeierstrassCurve, p: int) -> TateParameterCheck:
    """v(q) = -v_p(j) and whether v(q) = p, the valuation-level necessary
    condition for q to be a p-th power of a uniformiser."""
    rt = reduction_type(curve, p)
    if rt.tag != ReductionTag.MULTIPLICATIVE:
        raise PreconditionViolated(f"{curve} does not have multiplicative reduction at {p}")
    v_q = -valuation_p(curve.j, p)
    return TateParameterCheck(p, v_q, v_q == p)

"""Common images of torsion points under two standard projections.

Over Q-bar the common set is read off from gcds in Q[x]: the torsion x-loci
are defined over Q, so common roots come in full Galois orbits.  The
finite-field oracle recounts the same set independently by enumerating
torsion points over extensions of F_l.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .algebra import intpoly as ip
from .algebra.finite_field import GF
from .algebra.forms import transport_int
from .algebra.poly import QQ, Poly
from .algebra.rational import is_prime
from .errors import (BranchLociCoincide, InadmissibleAuxiliaryPrime, InvalidArgument,
                     PreconditionViolated, SoundnessAlarm)
from .ff_torsion import orbit_min_polys, torsion_enumerate_ff
from .projection import StandardProjection, branch_coincidences_preserved, branch_disjoint_generic
from .weierstrass import WeierstrassCurve, exact_order_poly_int, reduction_type


# ---------------------------------------------------------------------------
# transported torsion loci as integer binary forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransportedPiece:
    """Image under the twist of the points of one exact order.

    ``form`` is an integral binary form (index i = X^i Z^(D-i)); ``finite``
    its dehomogenisation without the factor at infinity.
    """

    order: int
    form: tuple
    finite: tuple
    at_infinity: bool

    @property
    def size(self) -> int:
        return len(self.form) - 1


def _piece(order, form):
    form = list(form)
    at_inf = form[-1] == 0
    finite = ip.zz_primitive(ip.trim(list(form)))
    return TransportedPiece(order, tuple(form), tuple(finite), at_inf)


def transported_pieces(P: StandardProjection, N: int) -> list[TransportedPiece]:
    """Pieces for orders 1..N (order 1 is the origin O at x = infinity)."""
    A, B, m = P.integral_data()
    pieces = [_piece(1, transport_int([1, 0], m))]  # Z: the point at infinity
    for n in range(2, N + 1):
        phi = list(exact_order_poly_int(A, B, n))
        pieces.append(_piece(n, transport_int(phi, m)))
    return pieces


def _union_form(pieces, lowest=2):
    """Product of the pieces of order >= lowest, as (finite part, infinity flag)."""
    finite = [1]
    inf = False
    for pc in pieces:
        if pc.order < lowest:
            continue
        finite = ip.zz_mul(finite, list(pc.finite))
        inf = inf or pc.at_infinity
    return finite, inf


def torsion_x_poly(P: StandardProjection, N: int):
    """(squarefree polynomial over Q, infinity flag) for the images of torsion
    points of order <= N (O included) under the projection."""
    if N < 2:
        raise InvalidArgument("torsion_x_poly needs N >= 2")
    pieces = transported_pieces(P, N)
    finite, inf = _union_form(pieces, lowest=1)
    return Poly(finite, QQ), inf


# ---------------------------------------------------------------------------
# common torsion over Q-bar
# ---------------------------------------------------------------------------

@dataclass
class CommonFactor:
    coeffs: tuple  # primitive integer coefficients, lowest degree first
    degree: int
    multiplicity: int
    provenance: list  # [(order on curve 1, order on curve 2)]

    def as_poly(self) -> Poly:
        return Poly(self.coeffs, QQ)

    def pretty(self) -> str:
        return str(sympy.Poly(list(reversed(self.coeffs)), sympy.Symbol("x")).as_expr())


@dataclass
class TorsionReport:
    N: int
    labels: tuple
    factors: list
    infinity_is_common: bool
    infinity_provenance: list
    count: int
    loci_degrees: tuple  # number of image points per curve (order <= N)

    def common_orders(self):
        out = set()
        for f in self.factors:
            out.update(f.provenance)
        out.update(self.infinity_provenance)
        return sorted(out)


def _factor_over_q(coeffs):
    """Irreducible factors over Q of a primitive integer polynomial."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
    _, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        c = [int(v) for v in reversed(f.all_coeffs())]
        out.append((tuple(ip.zz_primitive(c)), mult))
    return out


def _modular_gcd_degree(a, b, rng_seed=0):
    """Degree of gcd(a, b) modulo a large prime preserving both degrees."""
    p = 2 ** 61 - 1
    while a[-1] % p == 0 or b[-1] % p == 0:
        p -= 2
        while not is_prime(p):
            p -= 2
    return len(ip.fp_gcd(ip.fp_from_zz(a, p), ip.fp_from_zz(b, p), p)) - 1


def common_projective_torsion(P1: StandardProjection, P2: StandardProjection, N: int) -> TorsionReport:
    if N < 1:
        raise InvalidArgument("N must be at least 1")
    cmp = branch_disjoint_generic(P1, P2)
    if cmp.sets_equal:
        raise BranchLociCoincide(
            "the branch loci coincide, so the projections differ by a deck transformation and "
            "share every torsion image; the pair must have distinct branch loci")
    pcs1 = transported_pieces(P1, N)
    pcs2 = transported_pieces(P2, N)
    found: dict[tuple, CommonFactor] = {}
    inf_prov = []
    for a in pcs1:
        for b in pcs2:
            if a.at_infinity and b.at_infinity:
                inf_prov.append((a.order, b.order))
            if len(a.finite) < 2 or len(b.finite) < 2:
                continue
            g = ip.zz_gcd(list(a.finite), list(b.finite))
            if len(g) < 2:
                continue
            for fac, mult in _factor_over_q(g):
                entry = found.get(fac)
                if entry is None:
                    found[fac] = CommonFactor(fac, len(fac) - 1, mult, [(a.order, b.order)])
                else:
                    entry.provenance.append((a.order, b.order))
    factors = sorted(found.values(), key=lambda f: (f.degree, f.coeffs))
    inf_common = bool(inf_prov)
    count = sum(f.degree for f in factors) + int(inf_common)
    # cross-check against the gcd of the complete loci
    u1, i1 = _union_form(pcs1, lowest=1)
    u2, i2 = _union_form(pcs2, lowest=1)
    if _modular_gcd_degree(u1, u2) < count - int(inf_common) or (i1 and i2) != inf_common:
        raise SoundnessAlarm("pairwise common factors disagree with the gcd of the full loci")
    degrees = (sum(pc.size for pc in pcs1), sum(pc.size for pc in pcs2))
    return TorsionReport(N, (P1.label, P2.label), factors, inf_common, inf_prov, count, degrees)


# ---------------------------------------------------------------------------
# finite-field oracle
# ---------------------------------------------------------------------------

def _admissibility(P1, P2, N, l):
    if not is_prime(l) or l < 5:
        raise InadmissibleAuxiliaryPrime(f"auxiliary prime must be a prime >= 5, got {l}")
    bad = [n for n in range(2, N + 1) if n % l == 0]
    if bad:
        raise InadmissibleAuxiliaryPrime(f"l = {l} divides the torsion orders {bad}")
    for P in (P1, P2):
        rt = reduction_type(P.curve, l)
        if not rt.is_good:
            raise InadmissibleAuxiliaryPrime(f"{P.label or P.curve} has {rt.tag} reduction at {l}")
    if not branch_coincidences_preserved(P1, P2, l):
        raise InadmissibleAuxiliaryPrime(
            f"branch loci acquire new coincidences (or degenerate) mod {l}")


def _reduced_local(P: StandardProjection, l: int):
    A, B, m = P.local_data(l)
    F = GF(l)
    curve = WeierstrassCurve.short(A.numerator * pow(A.denominator, -1, l),
                                   B.numerator * pow(B.denominator, -1, l), F)
    return curve, m


def image_set_ff(P: StandardProjection, N: int, l: int):
    """({minimal polynomial key: orbit size}, infinity flag) of the images over
    F_l-bar of torsion points of order <= N (O included)."""
    curve, m = _reduced_local(P, l)
    a, b, c, d = (v % l for v in m.entries)
    enum = torsion_enumerate_ff(curve, N)
    images = set()
    infinity = False
    F = GF(l)
    # O maps to (a : c)
    if c == 0:
        infinity = True
    else:
        images.add(F(a) / F(c))
    for d_order, xs in enum.by_order.items():
        for x in xs:
            den = x * c + d
            if not den:
                infinity = True
            else:
                images.add((x * a + b) / den)
    return orbit_min_polys(images), infinity


def ff_oracle_common(P1: StandardProjection, P2: StandardProjection, N: int, l: int) -> int:
    """Number of common images over F_l-bar of torsion of order <= N."""
    _admissibility(P1, P2, N, l)
    s1, inf1 = image_set_ff(P1, N, l)
    s2, inf2 = image_set_ff(P2, N, l)
    return sum(size for key, size in s1.items() if key in s2) + int(inf1 and inf2)


def is_separating(P1: StandardProjection, P2: StandardProjection, N: int, l: int) -> bool:
    """Reduction mod l keeps all image points of both loci distinct.

    Admissibility alone does not rule out two different torsion images
    becoming congruent mod l, which would inflate the finite-field count;
    at a separating prime the two counts must agree.
    """
    try:
        _admissibility(P1, P2, N, l)
    except (InadmissibleAuxiliaryPrime, PreconditionViolated):
        return False
    u1, i1 = _union_form(transported_pieces(P1, N), lowest=1)
    u2, i2 = _union_form(transported_pieces(P2, N), lowest=1)
    g = ip.zz_gcd(u1, u2)
    lcm = ip.zz_divexact(ip.zz_mul(u1, u2), g)
    if lcm[-1] % l == 0:
        return False  # a finite point would move to infinity
    f = ip.fp_from_zz(lcm, l)
    if len(f) > 1 and len(ip.fp_gcd(f, ip.fp_derivative(f, l), l)) > 1:
        return False
    return True


def separating_primes(P1, P2, N: int, candidates, count: int = 2) -> list[int]:
    out = []
    for l in candidates:
        if is_separating(P1, P2, N, l):
            out.append(l)
            if len(out) == count:
                break
    return out

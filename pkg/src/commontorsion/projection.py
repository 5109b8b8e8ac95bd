"""Standard projections E -> P^1 (a Mobius twist of the x-coordinate),
their branch quartics, and checkers for the reduction assumptions at p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import intpoly as ip
from .algebra.finite_field import GF
from .algebra.forms import BinaryForm, det_bareiss, integer_resultant, resultant, sylvester_matrix
from .algebra.poly import Poly, embed, equal_degree_factors, poly_gcd, squarefree_part
from .algebra.rational import _check_prime, int_valuation, primitive_integers
from .errors import InvalidArgument, PreconditionViolated
from .weierstrass import (ReductionTag, WeierstrassCurve, integral_scaling, minimal_scaling_exponent,
                          reduction_type)


class Mobius:
    """Projective 2x2 matrix (a, b; c, d): (X : Z) -> (aX + bZ : cX + dZ).

    Stored as coprime integers with the first nonzero entry positive.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        ints = primitive_integers([a, b, c, d])
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        self.a, self.b, self.c, self.d = ints
        if self.det == 0:
            raise InvalidArgument("Mobius matrix must be invertible")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def apply(self, X, Z):
        return (self.a * X + self.b * Z, self.c * X + self.d * Z)

    def image_of_infinity(self):
        return (self.a, self.c)

    def transport(self, F: BinaryForm) -> BinaryForm:
        """Form whose zero set is the image of the zero set of F."""
        return F.substitute(self.d, -self.b, -self.c, self.a)

    def invertible_mod(self, p: int) -> bool:
        return self.det % p != 0

    def __eq__(self, other):
        return isinstance(other, Mobius) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Mobius({}, {}, {}, {})".format(*self.entries)


def _diag(s, t):
    return Mobius(s, 0, 0, t)


@dataclass(frozen=True)
class StandardProjection:
    """x-coordinate of a short model followed by a Mobius twist.

    Built from any Weierstrass model with :meth:`from_curve`; the translation
    to short form is folded into the twist so the projection is unchanged.
    """

    curve: WeierstrassCurve
    twist: Mobius
    label: str = ""
    source: WeierstrassCurve | None = None

    def __post_init__(self):
        if not self.curve.is_short:
            raise InvalidArgument("StandardProjection stores a short model; use from_curve")
        if self.curve.is_singular():
            raise InvalidArgument("the cubic of a standard projection must be squarefree")

    @classmethod
    def from_curve(cls, curve: WeierstrassCurve, twist: Mobius | None = None, label: str = ""):
        twist = twist or Mobius.identity()
        if curve.is_short:
            return cls(curve, twist, label, curve)
        short, shift = curve.short_form()
        # x_input = x_short - shift
        return cls(short, twist @ Mobius(1, -shift, 0, 1), label, curve)

    @property
    def a(self) -> Fraction:
        return self.curve.a4

    @property
    def b(self) -> Fraction:
        return self.curve.a6

    def integral_data(self):
        """(A, B, m) with y^2 = x^3 + A x + B integral and m acting on its x."""
        u, A, B = integral_scaling(self.a, self.b)
        # x_short = x_int / u^2
        return A, B, self.twist @ _diag(1, u * u)

    def local_data(self, p: int):
        """(A, B, m) for the p-minimal short model and the matching twist."""
        t = minimal_scaling_exponent(self.curve, p)
        s = Fraction(p) ** t
        A, B = self.a / s ** 4, self.b / s ** 6
        # x_short = s^2 x_local
        m = self.twist @ _diag(s * s, 1)
        return A, B, m

    def cubic_form(self) -> BinaryForm:
        """Z * f(X, Z) with f = X^3 + a X Z^2 + b Z^3: roots of f and infinity."""
        return BinaryForm([self.b, self.a, 0, 1, 0], 4)


def branch_form(P: StandardProjection) -> BinaryForm:
    """Branch quartic of the projection, integral and primitive."""
    F = P.twist.transport(P.cubic_form())
    return BinaryForm(F.primitive_integers(), 4)


@dataclass(frozen=True)
class BranchComparison:
    disjoint: bool
    sets_equal: bool
    resultant: Fraction
    common_points: int  # over Q-bar, from the gcd of the two quartics


def _common_root_count(F: BinaryForm, G: BinaryForm) -> int:
    both_inf = F.infinity_multiplicity() > 0 and G.infinity_multiplicity() > 0
    f = Poly(F.coeffs)
    g = Poly(G.coeffs)
    if not f or not g:
        return int(both_inf)
    return poly_gcd(f, g).degree + int(both_inf)


def branch_disjoint_generic(P1: StandardProjection, P2: StandardProjection) -> BranchComparison:
    F, G = branch_form(P1), branch_form(P2)
    res = resultant(F, G)
    return BranchComparison(res != 0, F.projectively_equal(G), res, _common_root_count(F, G))


def form_partials(coeffs: list[int]):
    d = len(coeffs) - 1
    fx = [i * coeffs[i] for i in range(1, d + 1)]
    fz = [(d - i) * coeffs[i] for i in range(d)]
    return fx, fz


def form_discriminant_like(coeffs: list[int]) -> int:
    """Res(dF/dX, dF/dZ): vanishes (mod p > deg) iff F has a repeated point."""
    fx, fz = form_partials(coeffs)
    d = len(coeffs) - 1
    return det_bareiss(sylvester_matrix(list(reversed(fx)), list(reversed(fz)), d - 1, d - 1))


@dataclass
class SimplestCheck:
    p: int
    passed: bool
    resultant: int
    valuation: object
    quartics_separable: tuple
    generic_common_points: int
    special_common_points: int
    reasons: list = field(default_factory=list)


def _require_good(P, p):
    rt = reduction_type(P.curve, p)
    if not rt.is_good:
        raise PreconditionViolated(f"{P.label or P.curve} does not have good reduction at {p} ({rt.tag})")
    return rt


def _local_quartic(P: StandardProjection, p: int) -> list[int]:
    """Branch quartic from the p-minimal model: integral primitive coefficients."""
    A, B, m = P.local_data(p)
    F = m.transport(BinaryForm([B, A, 0, 1, 0], 4))
    return F.primitive_integers()


def check_assumption_simplest(P1: StandardProjection, P2: StandardProjection, p: int) -> SimplestCheck:
    """Branch loci of the reductions at p are four points each and disjoint."""
    _check_prime(p)
    _require_good(P1, p)
    _require_good(P2, p)
    q1, q2 = _local_quartic(P1, p), _local_quartic(P2, p)
    F1, F2 = BinaryForm(q1, 4), BinaryForm(q2, 4)
    res = integer_resultant(F1, F2)
    v = int_valuation(res, p)
    sep = (form_discriminant_like(q1) % p != 0, form_discriminant_like(q2) % p != 0)
    reasons = []
    if not all(sep):
        reasons.append("a branch quartic acquires a repeated point mod p (twist not invertible on the special fibre)")
    if v != 0:
        reasons.append(f"p divides the resultant of the branch quartics (valuation {v})")
    special = _special_common_count(q1, q2, p)
    generic = branch_disjoint_generic(P1, P2).common_points
    return SimplestCheck(p, not reasons, res, v, sep, generic, special, reasons)


def branch_coincidences_preserved(P1: StandardProjection, P2: StandardProjection, p: int) -> bool:
    """Both branch quartics stay separable mod p and no branch points of the
    two projections become equal mod p beyond those already equal over Q-bar."""
    _require_good(P1, p)
    _require_good(P2, p)
    q1, q2 = _local_quartic(P1, p), _local_quartic(P2, p)
    if form_discriminant_like(q1) % p == 0 or form_discriminant_like(q2) % p == 0:
        return False
    generic = branch_disjoint_generic(P1, P2).common_points
    return _special_common_count(q1, q2, p) == generic


# ---------------------------------------------------------------------------
# points of P^1 over F_p-bar (inside GF(p, 6), which holds all roots of cubics)
# ---------------------------------------------------------------------------

INF_POINT = "inf"


def _roots_mod_p(coeffs: list[int], p: int):
    """Distinct roots in GF(p, 6) of an integer polynomial of degree <= 3 mod p."""
    f = Poly(ip.fp_from_zz(coeffs, p), GF(p))
    if f.degree <= 0:
        return []
    L = GF(p, 6)
    g = embed(squarefree_part(f), L)
    if g.degree == 1:
        return [-g.monic().coeffs[0]]
    return [-h.coeffs[0] for h in equal_degree_factors(g.monic(), 1)]


def _map_point(m: Mobius, x, p):
    """Image of x (an element of GF(p,6) or INF_POINT) under m mod p."""
    a, b, c, d = (v % p for v in m.entries)
    if x == INF_POINT:
        num, den = a, c
        if den == 0:
            return INF_POINT
        L = GF(p, 6)
        return L(num) / L(den)
    num = x * a + b
    den = x * c + d
    if not den:
        return INF_POINT
    return num / den


def _point_str(x) -> str:
    if x == INF_POINT:
        return "inf"
    if x.in_prime_field():
        return str(int(x))
    return f"[{x}] in GF({x.field.p}^6)"


def _branch_points_mod_p(A, B, m, p):
    pts = [_map_point(m, r, p) for r in _roots_mod_p([B, A, 0, 1], p)]
    return pts + [_map_point(m, INF_POINT, p)]


def _special_common_count(q1, q2, p) -> int:
    """Common points mod p of two integral binary forms that stay separable."""
    f1, f2 = ip.fp_from_zz(q1, p), ip.fp_from_zz(q2, p)
    both_inf = len(f1) < len(q1) and len(f2) < len(q2)
    common = 0
    if len(f1) > 1 and len(f2) > 1:
        common = len(ip.fp_gcd(f1, f2, p)) - 1
    return common + int(both_inf)


@dataclass
class CurveLocalPicture:
    label: str
    tag: ReductionTag
    twist_invertible: bool
    branch_points: list  # normalisation branch points in P^1(F_p-bar)
    node_image: object  # a point, or None for good reduction
    node: object = None  # node x-coordinate on the local short model


@dataclass
class MixedAssumptionReport:
    p: int
    curves: list
    generic_branch_distinct: bool
    twists_reduce: bool
    good_curves_ordinary: bool
    special_branch_distinct: bool
    nodes_avoid_branch_points: bool
    nodes_distinct: bool
    special_sets_disjoint: bool
    passed: bool
    reasons: list = field(default_factory=list)

    def describe(self) -> dict:
        out = {}
        for c in self.curves:
            out[c.label] = {
                "tag": str(c.tag),
                "branch_points": [_point_str(x) for x in c.branch_points],
                "node_image": None if c.node_image is None else _point_str(c.node_image),
            }
        return out


def _local_picture(P: StandardProjection, p: int, label: str) -> CurveLocalPicture:
    rt = reduction_type(P.curve, p)
    if rt.tag == ReductionTag.ADDITIVE:
        raise PreconditionViolated(f"{label} has additive reduction at {p}")
    A, B, m = P.local_data(p)
    Ai = A.numerator * pow(A.denominator, -1, p) % p
    Bi = B.numerator * pow(B.denominator, -1, p) % p
    inv_ok = m.invertible_mod(p)
    if rt.is_good:
        return CurveLocalPicture(label, rt.tag, inv_ok, _branch_points_mod_p(Ai, Bi, m, p), None)
    # nodal cubic: f = (x - x0)^2 (x - x1) mod p, with x1 = -2 x0 (no x^2 term)
    f = [Bi, Ai, 0, 1]
    g = ip.fp_gcd(f, ip.fp_derivative(f, p), p)
    if len(g) != 2:
        raise PreconditionViolated(f"{label}: reduced cubic has no simple node")
    x0 = -g[0] % p
    x1 = -2 * x0 % p
    L = GF(p, 6)
    branch = [_map_point(m, L(x1), p), _map_point(m, INF_POINT, p)]
    return CurveLocalPicture(label, rt.tag, inv_ok, branch, _map_point(m, L(x0), p), x0)


def check_assumption_mixed(P1: StandardProjection, P2: StandardProjection, p: int) -> MixedAssumptionReport:
    """Assumption (a) for pairs with at least one multiplicative curve at p.

    Passes when no point of P^1 over F_p-bar is special (node image or
    normalisation branch point) for both projections, the generic branch
    loci differ, good curves are ordinary and the twists reduce to
    automorphisms of P^1 over F_p.
    """
    _check_prime(p)
    pics = [_local_picture(P1, p, P1.label or "E1"), _local_picture(P2, p, P2.label or "E2")]
    if not any(pc.tag == ReductionTag.MULTIPLICATIVE for pc in pics):
        raise PreconditionViolated("check_assumption_mixed needs a multiplicative curve; use the simplest check")
    reasons = []
    generic = not branch_disjoint_generic(P1, P2).sets_equal
    if not generic:
        reasons.append("generic branch loci coincide")
    twists = all(pc.twist_invertible for pc in pics)
    if not twists:
        reasons.append("a twist is not invertible mod p")
    ordinary = all(pc.tag != ReductionTag.GOOD_SUPERSINGULAR for pc in pics)
    if not ordinary:
        reasons.append("good-reduction partner is supersingular (nice models need ordinary reduction)")
    b1, b2 = set(pics[0].branch_points), set(pics[1].branch_points)
    branch_distinct = b1 != b2 and not (b1 & b2)
    if not branch_distinct:
        reasons.append("special-fibre branch points are shared")
    nodes = [pc.node_image for pc in pics if pc.node_image is not None]
    avoid = all(n not in b1 and n not in b2 for n in nodes)
    if not avoid:
        reasons.append("a node image coincides with a branch point")
    distinct_nodes = len(set(nodes)) == len(nodes)
    if not distinct_nodes:
        reasons.append("node images coincide")
    s1 = b1 | ({pics[0].node_image} if pics[0].node_image is not None else set())
    s2 = b2 | ({pics[1].node_image} if pics[1].node_image is not None else set())
    disjoint = not (s1 & s2)
    if not disjoint and not reasons:
        reasons.append("special sets intersect")
    passed = generic and twists and ordinary and branch_distinct and avoid and distinct_nodes and disjoint
    return MixedAssumptionReport(p, pics, generic, twists, ordinary, branch_distinct, avoid,
                                 distinct_nodes, disjoint, passed, reasons)

"""Weierstrass models over Q and F_p: invariants, reduction at p, group law,
Hasse invariant and division polynomials.
"""

from __future__ import annotations

import functools
import math
from collections import namedtuple
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import intpoly as ip
from .algebra.finite_field import GF
from .algebra.poly import QQ, Poly
from .algebra.rational import INF, _check_prime, valuation_p
from .errors import InvalidArgument, PointNotOnCurve, SingularCurve, UnsupportedPrime

Invariants = namedtuple("Invariants", "b2 b4 b6 b8 c4 c6 disc j")


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q or a finite field."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6", "_inv")

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0, field=QQ):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(c) for c in (a1, a2, a3, a4, a6))
        self._inv = None

    @classmethod
    def short(cls, a, b, field=QQ):
        return cls(0, 0, 0, a, b, field)

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def _invariants(self):
        if self._inv is None:
            a1, a2, a3, a4, a6 = self.coefficients
            b2 = a1 * a1 + 4 * a2
            b4 = 2 * a4 + a1 * a3
            b6 = a3 * a3 + 4 * a6
            b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
            c4 = b2 * b2 - 24 * b4
            c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
            disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
            j = c4 * c4 * c4 / disc if disc else None
            self._inv = Invariants(b2, b4, b6, b8, c4, c6, disc, j)
        return self._inv

    @property
    def discriminant(self):
        return self._invariants().disc

    @property
    def c4(self):
        return self._invariants().c4

    @property
    def c6(self):
        return self._invariants().c6

    @property
    def j(self):
        return self._invariants().j

    def is_singular(self) -> bool:
        return not self._invariants().disc

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve) and self.field is other.field
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((repr(self.field), self.coefficients))

    def __repr__(self):
        lhs = "y^2"
        if self.a1:
            lhs += f" + ({self.a1})*x*y"
        if self.a3:
            lhs += f" + ({self.a3})*y"
        rhs = "x^3"
        for c, mon in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if c:
                rhs += f" + ({c})" + (f"*{mon}" if mon else "")
        field = "" if self.field is QQ else f" over {self.field}"
        return f"{lhs} = {rhs}{field}"

    # -- models -------------------------------------------------------------
    def change_coordinates(self, u, r, s, t) -> "WeierstrassCurve":
        """Model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        F = self.field
        u, r, s, t = F(u), F(r), F(s), F(t)
        a1, a2, a3, a4, a6 = self.coefficients
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
        na3 = (a3 + r * a1 + 2 * t) / u ** 3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
        na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
        return WeierstrassCurve(na1, na2, na3, na4, na6, F)

    def short_form(self):
        """(short model y^2 = x^3 + A x + B, shift) with x_short = x + shift.

        Uses A = -c4/48, B = -c6/864 and shift = b2/12; needs characteristic
        other than 2 and 3.
        """
        if self.field is not QQ and self.field.characteristic in (2, 3):
            raise UnsupportedPrime("short form needs characteristic >= 5")
        inv = self._invariants()
        F = self.field
        return (WeierstrassCurve.short(-inv.c4 / F(48), -inv.c6 / F(864), F), inv.b2 / F(12))

    def reduce_mod(self, p: int, m: int = 1) -> "WeierstrassCurve":
        if self.field is not QQ:
            raise InvalidArgument("reduce_mod expects a rational model")
        F = GF(p, m)
        coeffs = []
        for c in self.coefficients:
            if valuation_p(c, p) < 0:
                raise InvalidArgument(f"model is not integral at {p}")
            coeffs.append(F(c.numerator * pow(c.denominator, -1, p) % p))
        return WeierstrassCurve(*coeffs, field=F)

    def rhs(self) -> Poly:
        """x^3 + a2 x^2 + a4 x + a6 (for short forms this is f with y^2 = f)."""
        return Poly([self.a6, self.a4, self.a2, 1], self.field)

    def contains(self, P) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return (y * y + self.a1 * x * y + self.a3 * y
                == x * x * x + self.a2 * x * x + self.a4 * x + self.a6)


def invariants(curve: WeierstrassCurve, allow_singular: bool = True) -> Invariants:
    """(b2, b4, b6, b8, c4, c6, disc, j); j is None for singular models."""
    inv = curve._invariants()
    if not inv.disc and not allow_singular:
        raise SingularCurve(f"discriminant vanishes for {curve}")
    return inv


# ---------------------------------------------------------------------------
# local data at p >= 5
# ---------------------------------------------------------------------------

def _require_large_prime(p):
    _check_prime(p)
    if p < 5:
        raise UnsupportedPrime(f"p = {p}: only primes p >= 5 are supported")


def minimal_scaling_exponent(curve: WeierstrassCurve, p: int) -> int:
    """t such that scaling by u = p^t gives a p-minimal model (p >= 5)."""
    _require_large_prime(p)
    inv = invariants(curve, allow_singular=False)
    v4, v6 = valuation_p(inv.c4, p), valuation_p(inv.c6, p)
    cands = [math.floor(v / k) for v, k in ((v4, 4), (v6, 6)) if v != INF]
    return min(cands)


def _is_integral_at(curve, p):
    return all(valuation_p(c, p) >= 0 for c in curve.coefficients)


def minimal_at_p(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """A p-minimal model: unchanged when already p-integral and minimal,
    otherwise the short model rescaled by u = p^t."""
    if curve.field is not QQ:
        raise InvalidArgument("minimal_at_p expects a rational model")
    t = minimal_scaling_exponent(curve, p)
    if t == 0 and _is_integral_at(curve, p):
        return curve
    short, _ = curve.short_form()
    u = Fraction(p) ** t
    return WeierstrassCurve.short(short.a4 / u ** 4, short.a6 / u ** 6)


class ReductionTag(str, Enum):
    GOOD_ORDINARY = "GoodOrdinary"
    GOOD_SUPERSINGULAR = "GoodSupersingular"
    MULTIPLICATIVE = "Multiplicative"
    ADDITIVE = "Additive"

    def __str__(self):
        return self.value

    @property
    def is_good(self):
        return self in (ReductionTag.GOOD_ORDINARY, ReductionTag.GOOD_SUPERSINGULAR)


@dataclass(frozen=True)
class ReductionType:
    tag: ReductionTag
    p: int
    v_disc_min: int
    v_c4: object  # int or math.inf, on the minimal model
    v_j: object

    @property
    def is_good(self):
        return self.tag.is_good


def reduction_type(curve: WeierstrassCurve, p: int) -> ReductionType:
    _require_large_prime(p)
    inv = invariants(curve, allow_singular=False)
    t = minimal_scaling_exponent(curve, p)
    v_disc = valuation_p(inv.disc, p) - 12 * t
    v_c4 = valuation_p(inv.c4, p)
    v_c4 = v_c4 - 4 * t if v_c4 != INF else INF
    v_j = valuation_p(inv.j, p)
    if v_disc == 0:
        reduced = minimal_at_p(curve, p).short_form()[0].reduce_mod(p)
        tag = ReductionTag.GOOD_SUPERSINGULAR if is_supersingular(reduced) else ReductionTag.GOOD_ORDINARY
    elif v_c4 == 0:
        tag = ReductionTag.MULTIPLICATIVE
    else:
        tag = ReductionTag.ADDITIVE
    return ReductionType(tag, p, v_disc, v_c4, v_j)


def hasse_invariant(curve: WeierstrassCurve):
    """Coefficient of x^(p-1) in f^((p-1)/2) for the short model y^2 = f."""
    F = curve.field
    if F is QQ:
        raise InvalidArgument("the Hasse invariant needs a curve over a finite field")
    p = F.characteristic
    _require_large_prime(p)
    short = curve if curve.is_short else curve.short_form()[0]
    if short.is_singular():
        raise SingularCurve(f"{curve} is singular")
    f = short.rhs()
    return (f ** ((p - 1) // 2))[p - 1]


def is_supersingular(curve: WeierstrassCurve) -> bool:
    return not hasse_invariant(curve)


# ---------------------------------------------------------------------------
# group law
# ---------------------------------------------------------------------------

class CurvePoint:
    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x, self.y = x, y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return isinstance(other, CurvePoint) and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "Infinity" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


def _on_curve(curve, P):
    if not curve.contains(P):
        raise PointNotOnCurve(f"{P} is not on {curve}")


def point_neg(curve, P):
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - curve.a1 * P.x - curve.a3)


def _add(curve, P, Q):
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = curve.coefficients
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def point_add(curve, P, Q):
    _on_curve(curve, P)
    _on_curve(curve, Q)
    return _add(curve, P, Q)


def point_mul_n(curve, P, n: int):
    _on_curve(curve, P)
    if n < 0:
        P, n = point_neg(curve, P), -n
    result = INFINITY
    base = P
    while n:
        if n & 1:
            result = _add(curve, result, base)
        n >>= 1
        if n:
            base = _add(curve, base, base)
    return result


def point_order(curve, P, bound: int):
    """Order of P by repeated addition, or None if it exceeds ``bound``."""
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity:
            return k
        Q = _add(curve, Q, P)
    return None


# ---------------------------------------------------------------------------
# division polynomials
# ---------------------------------------------------------------------------

class _IntRing:
    """Z[x] on int lists."""

    def __init__(self, a, b):
        self.one = [1]
        self.f4 = [4 * b, 4 * a, 0, 4]
        self.psi3 = ip.trim([-a * a, 12 * b, 6 * a, 0, 3])
        self.psi4 = ip.trim([2 * (-8 * b * b - a ** 3), -8 * a * b, -10 * a * a, 40 * b, 10 * a, 0, 2])
        self.mul, self.sub = ip.zz_mul, ip.zz_sub
        self.f = [b, a, 0, 1]


class _PolyRing:
    def __init__(self, a, b, field):
        X = Poly.x(field)
        self.one = Poly([1], field)
        self.f = X ** 3 + X * a + b
        self.f4 = self.f * 4
        self.psi3 = X ** 4 * 3 + X ** 2 * (a * 6) + X * (b * 12) - a * a
        self.psi4 = (X ** 6 + X ** 4 * (a * 5) + X ** 3 * (b * 20) - X ** 2 * (a * a * 5)
                     - X * (a * b * 4) - b * b * 8 - a ** 3) * 2
        self.mul = lambda u, v: u * v
        self.sub = lambda u, v: u - v


def _psi_table(ring, nmax):
    """y-free division polynomials Psi_0..Psi_nmax (Psi_2 = 1)."""
    mul, sub = ring.mul, ring.sub
    F2 = mul(ring.f4, ring.f4)
    psi = {0: sub(ring.one, ring.one), 1: ring.one, 2: ring.one, 3: ring.psi3, 4: ring.psi4}

    def get(n):
        if n in psi:
            return psi[n]
        m = n // 2
        if n % 2:
            a = mul(get(m + 2), mul(get(m), mul(get(m), get(m))))
            b = mul(get(m - 1), mul(get(m + 1), mul(get(m + 1), get(m + 1))))
            if m % 2 == 0:
                a = mul(F2, a)
            else:
                b = mul(F2, b)
            psi[n] = sub(a, b)
        else:
            inner = sub(mul(get(m + 2), mul(get(m - 1), get(m - 1))),
                        mul(get(m - 2), mul(get(m + 1), get(m + 1))))
            psi[n] = mul(get(m), inner)
        return psi[n]

    for n in range(5, nmax + 1):
        get(n)
    return psi


def _short_coefficients(curve):
    if not curve.is_short:
        raise InvalidArgument("division polynomials need a short model y^2 = x^3 + a x + b")
    return curve.a4, curve.a6


@functools.lru_cache(maxsize=256)
def _int_division_poly(a: int, b: int, n: int) -> tuple:
    ring = _IntRing(a, b)
    psi = _psi_table(ring, n)[n]
    if n % 2 == 0:
        psi = ip.zz_mul(ring.f, psi)
    return tuple(psi)


def integral_scaling(a, b) -> tuple[int, int, int]:
    """(u, A, B) with A = u^4 a, B = u^6 b integers and u a positive integer."""
    a, b = Fraction(a), Fraction(b)
    u = 1
    for d in (a.denominator, b.denominator):
        u = math.lcm(u, d)
    A, B = a * u ** 4, b * u ** 6
    return u, int(A), int(B)


def division_poly_x(curve: WeierstrassCurve, n: int) -> Poly:
    """Polynomial in x whose roots are the x-coordinates of E[n] minus O."""
    if n < 2:
        raise InvalidArgument("division_poly_x needs n >= 2")
    a, b = _short_coefficients(curve)
    F = curve.field
    if F is QQ:
        u, A, B = integral_scaling(a, b)
        coeffs = _int_division_poly(A, B, n)
        if u == 1:
            return Poly(coeffs, QQ)
        # roots of the scaled model are u^2 times the original ones
        s = u * u
        return Poly([c * s ** i for i, c in enumerate(coeffs)], QQ)
    ring = _PolyRing(a, b, F)
    psi = _psi_table(ring, n)[n]
    if n % 2 == 0:
        psi = ring.f * psi
    return psi


def division_poly_int(a: int, b: int, n: int) -> list[int]:
    """division_poly_x for y^2 = x^3 + a x + b with integer a, b, as an int list."""
    return list(_int_division_poly(a, b, n))


@functools.lru_cache(maxsize=256)
def exact_order_poly_int(a: int, b: int, n: int) -> tuple:
    """Primitive integer polynomial whose roots are x-coordinates of points of
    exact order n on y^2 = x^3 + a x + b (n >= 2)."""
    full = ip.zz_primitive(division_poly_int(a, b, n))
    for d in range(2, n):
        if n % d == 0:
            full = ip.zz_divexact(full, list(exact_order_poly_int(a, b, d)))
    return tuple(ip.zz_primitive(full))

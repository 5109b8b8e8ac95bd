"""Dense univariate polynomials over Q or a finite field.

Coefficients are stored lowest degree first as domain elements
(:class:`fractions.Fraction` for Q, :class:`FqElement` for finite fields).
Heavy integer work is delegated to :mod:`.intpoly`.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from ..errors import RingMismatch, UndefinedGcd, UndefinedInput
from . import intpoly as ip
from .finite_field import GF, FiniteField, FqElement


class RationalField:
    """The field Q, exposing the same small interface as FiniteField."""

    characteristic = 0
    p = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, FqElement):
            raise RingMismatch("cannot coerce a finite-field element into Q")
        return Fraction(value)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = RationalField()


def _field_char(domain):
    return domain.characteristic if domain is not QQ else 0


class Poly:
    __slots__ = ("domain", "coeffs")

    def __init__(self, coeffs=(), domain=QQ):
        conv = [domain(c) for c in coeffs]
        while conv and not conv[-1]:
            conv.pop()
        self.domain = domain
        self.coeffs = tuple(conv)

    @classmethod
    def _raw(cls, coeffs, domain):
        obj = cls.__new__(cls)
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj.domain = domain
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, domain=QQ):
        return cls._raw([domain.zero, domain.one], domain)

    @classmethod
    def constant(cls, c, domain=QQ):
        return cls([c], domain)

    @classmethod
    def from_roots(cls, roots, domain):
        result = cls.constant(1, domain)
        for r in roots:
            result = result * cls._raw([-domain(r), domain.one], domain)
        return result

    # -- basic structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def _check(self, other):
        if isinstance(other, Poly):
            if other.domain is not self.domain:
                raise RingMismatch(f"{self.domain} vs {other.domain}")
            return other
        return Poly([other], self.domain)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.domain is other.domain and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FqElement)):
            return self == Poly([other], self.domain)
        return NotImplemented

    def __hash__(self):
        return hash((repr(self.domain), self.coeffs))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        for i, c in enumerate(b):
            r[i] = r[i] + c
        return Poly._raw(r, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.domain)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.domain(other)
            return Poly._raw([c * x for x in self.coeffs], self.domain)
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([], self.domain)
        zero = self.domain.zero
        r = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    r[i + j] = r[i + j] + x * y
        return Poly._raw(r, self.domain)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1, self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv = self.domain.one / b[-1]
        if len(r) - 1 < db:
            return Poly._raw([], self.domain), self
        q = [self.domain.zero] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv
            if c:
                q[i - db] = c
                base = i - db
                for j in range(db + 1):
                    r[base + j] = r[base + j] - c * b[j]
        return Poly._raw(q, self.domain), Poly._raw(r[:db], self.domain)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return not (other % self).coeffs

    def __call__(self, x):
        r = self.domain.zero if not isinstance(x, Poly) else Poly._raw([], self.domain)
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def eval_in(self, value: FqElement) -> FqElement:
        """Evaluate at an element of an extension of the coefficient field."""
        field = value.field
        acc = field.zero.coeffs
        for c in reversed(self.coeffs):
            if isinstance(c, FqElement):
                c = field(c).coeffs
            else:
                c = field(_as_residue(c, field.p)).coeffs
            acc = field.add(field.mul(acc, value.coeffs), c)
        return FqElement(field, acc)

    def derivative(self):
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.domain)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.domain.one / self.coeffs[-1]
        return Poly._raw([c * inv for c in self.coeffs], self.domain)

    def powmod(self, e: int, modulus: "Poly"):
        result = Poly.constant(1, self.domain)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def reduce_mod(self, p: int, m: int = 1) -> "Poly":
        """Image of a p-integral rational polynomial in F_{p^m}[x]."""
        if self.domain is not QQ:
            raise RingMismatch("reduce_mod expects a rational polynomial")
        F = GF(p, m)
        return Poly._raw([F(_as_residue(c, p)) for c in self.coeffs], F)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficient list (content stripped, lc > 0)."""
        if self.domain is not QQ:
            raise RingMismatch("integer_coeffs expects a rational polynomial")
        if not self.coeffs:
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        return ip.zz_primitive([int(c * den) for c in self.coeffs])

    @classmethod
    def from_ints(cls, ints, domain=QQ):
        return cls(ints, domain)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = str(c) if not isinstance(c, FqElement) or c.field.m == 1 else f"({c})"
            if mon and c == 1:
                terms.append(mon)
            elif mon:
                terms.append(f"{cs}*{mon}")
            else:
                terms.append(cs)
        return " + ".join(terms)


def _as_residue(c, p):
    c = Fraction(c)
    try:
        return c.numerator * pow(c.denominator, -1, p) % p
    except ValueError:
        raise RingMismatch(f"{c} is not integral at {p}") from None


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; over Q via the integer subresultant sequence."""
    if f.domain is not g.domain:
        raise RingMismatch(f"{f.domain} vs {g.domain}")
    if not f and not g:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if f.domain is QQ:
        return Poly(ip.zz_gcd(f.integer_coeffs(), g.integer_coeffs()), QQ).monic()
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def _pth_root(f: Poly) -> Poly:
    F = f.domain
    p = F.characteristic
    e = p ** (F.m - 1)
    return Poly._raw([f.coeffs[i] ** e for i in range(0, len(f.coeffs), p)], F)


def squarefree_part(f: Poly) -> Poly:
    """Monic polynomial with the same roots as f, each simple."""
    if not f:
        raise UndefinedInput("squarefree part of the zero polynomial")
    if f.degree <= 1:
        return f.monic()
    df = f.derivative()
    if not df:
        return squarefree_part(_pth_root(f))
    g = poly_gcd(f, df)
    if g.degree == 0:
        return f.monic()
    w = f // g
    if f.domain is QQ:
        return w.monic()
    rest = squarefree_part(g)
    return (w * (rest // poly_gcd(w, rest))).monic()


# ---------------------------------------------------------------------------
# factoring over finite fields
# ---------------------------------------------------------------------------

def distinct_degree_factors(f: Poly, max_degree: int | None = None):
    """[(j, product of the monic irreducible degree-j factors of f)].

    ``f`` must be squarefree; factors of degree above ``max_degree`` are
    collected into a final entry with j = None.
    """
    F = f.domain
    f = f.monic()
    out = []
    h = Poly.x(F)
    x = Poly.x(F)
    j = 0
    truncated = False
    while f.degree >= 2 * (j + 1):
        j += 1
        if max_degree is not None and j > max_degree:
            truncated = True
            break
        h = h.powmod(F.order, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((j, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        # what is left is irreducible unless the scan stopped early
        if truncated or (max_degree is not None and f.degree > max_degree):
            out.append((None, f))
        else:
            out.append((f.degree, f))
    return out


def equal_degree_factors(f: Poly, j: int, rng: random.Random | None = None):
    """Split a monic squarefree product of degree-j irreducibles (odd char)."""
    F = f.domain
    rng = rng or random.Random(0x5EED)
    if f.degree == j:
        return [f.monic()]
    q = F.order
    if q % 2 == 0:
        raise NotImplementedError("characteristic 2 splitting")
    e = (q ** j - 1) // 2
    while True:
        a = Poly._raw([F.random(rng) for _ in range(f.degree)], F)
        if a.degree <= 0:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        b = a.powmod(e, f) - 1
        if not b:
            continue
        g = poly_gcd(b, f)
        if 0 < g.degree < f.degree:
            break
    return equal_degree_factors(g, j, rng) + equal_degree_factors(f // g, j, rng)


def factor_ff(f: Poly):
    """Monic irreducible factorisation [(factor, multiplicity)] over F_q."""
    if not f:
        raise UndefinedInput("factorisation of the zero polynomial")
    out = {}
    rest = f.monic()
    sqf = squarefree_part(rest)
    for j, g in distinct_degree_factors(sqf):
        for h in equal_degree_factors(g, j):
            mult = 0
            while rest.degree >= h.degree and h.divides(rest):
                rest = rest // h
                mult += 1
            out[h.coeffs] = (h, mult)
    return sorted(out.values(), key=lambda t: (t[0].degree, _key(t[0])))


def _key(f):
    return tuple(c.coeffs for c in f.coeffs)


def embed(f: Poly, F: FiniteField) -> Poly:
    """View a polynomial over the prime field as one over an extension."""
    if f.domain.m != 1 or f.domain.p != F.p:
        raise RingMismatch("can only embed prime-field polynomials")
    return Poly._raw([F(c.coeffs[0]) for c in f.coeffs], F)


def roots_in_extension(f: Poly, max_degree: int):
    """All roots of f (over F_p) lying in F_{p^j}, j <= max_degree.

    Returns ``[(root, multiplicity)]``; a root of an irreducible factor of
    degree j is an element of ``GF(p, j)``, listed with all its conjugates.
    """
    if not f:
        raise UndefinedInput("roots of the zero polynomial")
    F = f.domain
    if F is QQ or F.m != 1:
        raise RingMismatch("roots_in_extension expects a prime-field polynomial")
    out = []
    for g, mult in factor_ff(f):
        j = g.degree
        if j > max_degree:
            continue
        E = GF(F.p, j)
        ge = embed(g, E)
        if j == 1:
            root = -ge.coeffs[0]
        else:
            linear = equal_degree_factors(ge, 1)[0]
            root = -linear.coeffs[0]
        r = root
        for _ in range(j):
            out.append((r, mult))
            r = r ** F.p
    return out


def min_poly(value: FqElement) -> Poly:
    """Minimal polynomial over the prime field of an extension element."""
    field = value.field
    conj = [value]
    r = value ** field.p
    while r != value:
        conj.append(r)
        r = r ** field.p
    prod = Poly.from_roots(conj, field)
    P = GF(field.p)
    return Poly._raw([P(int(c)) for c in prod.coeffs], P)

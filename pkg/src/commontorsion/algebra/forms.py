"""Binary forms (points of P^1) and ternary forms (plane curves)."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import InvalidArgument, UndefinedResultant
from .poly import QQ, Poly


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

class BinaryForm:
    """sum_i c_i X^i Z^(d-i) over Q (exact rationals)."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs, degree: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if degree is None:
            degree = len(coeffs) - 1
        if len(coeffs) > degree + 1:
            if any(coeffs[degree + 1:]):
                raise InvalidArgument("coefficient list longer than the degree allows")
            coeffs = coeffs[:degree + 1]
        coeffs += [Fraction(0)] * (degree + 1 - len(coeffs))
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_poly(cls, f: Poly, degree: int):
        return cls(f.coeffs, degree)

    @classmethod
    def linear(cls, a, b):
        """The form a*X + b*Z."""
        return cls([b, a], 1)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs, QQ)

    def is_zero(self):
        return not any(self.coeffs)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        r = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    r[i + j] += a * b
        return BinaryForm(r, self.degree + other.degree)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __call__(self, X, Z):
        return sum(c * X ** i * Z ** (self.degree - i) for i, c in enumerate(self.coeffs))

    def substitute(self, a, b, c, d) -> "BinaryForm":
        """F(aX + bZ, cX + dZ)."""
        lin1 = Poly([b, a])  # in the variable t = X/Z
        lin2 = Poly([d, c])
        total = Poly([])
        for i, coef in enumerate(self.coeffs):
            if coef:
                total = total + (lin1 ** i) * (lin2 ** (self.degree - i)) * coef
        return BinaryForm(total.coeffs, self.degree)

    def primitive_integers(self) -> list[int]:
        from .rational import primitive_integers
        return primitive_integers(self.coeffs)

    def infinity_multiplicity(self) -> int:
        """Order of vanishing at (1:0), i.e. how far the X-degree drops."""
        k = 0
        for c in reversed(self.coeffs):
            if c:
                break
            k += 1
        return k

    def projectively_equal(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree or self.is_zero() or other.is_zero():
            return False
        i = next(k for k, c in enumerate(self.coeffs) if c)
        if not other.coeffs[i]:
            return False
        ratio = other.coeffs[i] / self.coeffs[i]
        return all(ratio * a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                j = self.degree - i
                mon = "*".join(s for s in (_pw("X", i), _pw("Z", j)) if s)
                terms.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(terms) if terms else "0"


def _pw(v, e):
    return "" if e == 0 else (v if e == 1 else f"{v}^{e}")


def sylvester_matrix(f, g, m: int, n: int):
    """Sylvester matrix of coefficient lists (highest degree first)."""
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return rows


def det_bareiss(M) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def resultant(F: BinaryForm, G: BinaryForm) -> Fraction:
    """Homogeneous resultant of two binary forms (zero iff a common point of P^1)."""
    if F.is_zero() or G.is_zero():
        raise UndefinedResultant("resultant with the zero form")
    m, n = F.degree, G.degree
    if m == 0 and n == 0:
        return Fraction(1)
    # clear denominators so Bareiss stays in Z; resultant is bihomogeneous
    df = math.lcm(*(c.denominator for c in F.coeffs))
    dg = math.lcm(*(c.denominator for c in G.coeffs))
    fi = [int(c * df) for c in reversed(F.coeffs)]
    gi = [int(c * dg) for c in reversed(G.coeffs)]
    det = det_bareiss(sylvester_matrix(fi, gi, m, n))
    return Fraction(det, df ** n * dg ** m)


def integer_resultant(F: BinaryForm, G: BinaryForm) -> int:
    """Resultant of the integral primitive representatives of F and G."""
    if F.is_zero() or G.is_zero():
        raise UndefinedResultant("resultant with the zero form")
    fi = list(reversed(F.primitive_integers()))
    gi = list(reversed(G.primitive_integers()))
    return det_bareiss(sylvester_matrix(fi, gi, F.degree, G.degree))


# ---------------------------------------------------------------------------
# ternary forms modulo N
# ---------------------------------------------------------------------------

def monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree d in graded lexicographic order (x > y > z)."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return out


class TernaryForm:
    """Homogeneous polynomial in x, y, z with coefficients in Z/N."""

    __slots__ = ("degree", "modulus", "terms")

    def __init__(self, terms: dict, degree: int, modulus: int):
        self.degree = degree
        self.modulus = modulus
        clean = {}
        for mon, c in terms.items():
            if sum(mon) != degree:
                raise InvalidArgument(f"monomial {mon} is not of degree {degree}")
            c %= modulus
            if c:
                clean[mon] = c
        self.terms = clean

    @classmethod
    def zero(cls, degree, modulus):
        return cls({}, degree, modulus)

    @classmethod
    def _raw(cls, terms, degree, modulus):
        obj = cls.__new__(cls)
        obj.degree, obj.modulus, obj.terms = degree, modulus, terms
        return obj

    def is_zero(self):
        return not self.terms

    def coefficient(self, mon) -> int:
        return self.terms.get(tuple(mon), 0)

    def reduce(self, modulus: int) -> "TernaryForm":
        if self.modulus % modulus:
            raise InvalidArgument("can only reduce to a divisor of the modulus")
        return TernaryForm(self.terms, self.degree, modulus)

    def lift(self, modulus: int) -> "TernaryForm":
        """Same integer representatives viewed modulo a multiple."""
        return TernaryForm(dict(self.terms), self.degree, modulus)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise InvalidArgument("ternary forms over different moduli")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise InvalidArgument("adding forms of different degree")
        deg = self.degree if self.terms else other.degree
        N = self.modulus
        r = dict(self.terms)
        for mon, c in other.terms.items():
            v = (r.get(mon, 0) + c) % N
            if v:
                r[mon] = v
            else:
                r.pop(mon, None)
        return TernaryForm._raw(r, deg, N)

    def __neg__(self):
        N = self.modulus
        return TernaryForm._raw({m: -c % N for m, c in self.terms.items()}, self.degree, N)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "TernaryForm":
        return TernaryForm({m: k * c for m, c in self.terms.items()}, self.degree, self.modulus)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        N = self.modulus
        r = {}
        for (a1, b1, c1), u in self.terms.items():
            for (a2, b2, c2), v in other.terms.items():
                mon = (a1 + a2, b1 + b2, c1 + c2)
                r[mon] = r.get(mon, 0) + u * v
        return TernaryForm({m: c for m, c in r.items()}, self.degree + other.degree, N)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = TernaryForm({(0, 0, 0): 1}, 0, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        return (isinstance(other, TernaryForm) and self.modulus == other.modulus
                and self.terms == other.terms and (self.degree == other.degree or not self.terms))

    def __hash__(self):
        return hash((self.modulus, frozenset(self.terms.items())))

    def partial(self, i: int) -> "TernaryForm":
        r = {}
        for mon, c in self.terms.items():
            if mon[i]:
                m = list(mon)
                m[i] -= 1
                r[tuple(m)] = c * mon[i]
        return TernaryForm(r, max(self.degree - 1, 0), self.modulus)

    def inflate(self, p: int) -> "TernaryForm":
        """Substitute (x^p, y^p, z^p)."""
        return TernaryForm._raw({(a * p, b * p, c * p): v for (a, b, c), v in self.terms.items()},
                                self.degree * p, self.modulus)

    def compose(self, f) -> "TernaryForm":
        """self(f[0], f[1], f[2]) for ternary forms f of a common degree."""
        fx, fy, fz = f
        deg = fx.degree
        N = self.modulus
        result = TernaryForm.zero(self.degree * deg, N)
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = f[i] ** e
            return cache[key]

        for (a, b, c), v in self.terms.items():
            term = power(0, a) * power(1, b) * power(2, c)
            result = result + term.scale(v)
        return result

    def linear_change(self, g) -> "TernaryForm":
        """Substitute (x, y, z) -> g * (x, y, z) for a 3x3 integer matrix g."""
        N = self.modulus
        lin = [TernaryForm({(1, 0, 0): g[i][0], (0, 1, 0): g[i][1], (0, 0, 1): g[i][2]}, 1, N)
               for i in range(3)]
        return self.compose(lin)

    def evaluate(self, point, modulus=None):
        N = modulus or self.modulus
        x, y, z = point
        return sum(c * pow(x, a, N) * pow(y, b, N) * pow(z, cc, N)
                   for (a, b, cc), c in self.terms.items()) % N

    def vector(self, order=None) -> list[int]:
        order = order or monomials(self.degree)
        return [self.terms.get(m, 0) for m in order]

    @classmethod
    def from_vector(cls, vec, degree, modulus, order=None):
        order = order or monomials(degree)
        return cls({m: int(v) for m, v in zip(order, vec)}, degree, modulus)

    def divide_exact(self, k: int, new_modulus: int) -> "TernaryForm":
        """Divide every coefficient by k (must be exact), landing modulo new_modulus."""
        r = {}
        for m, c in self.terms.items():
            if c % k:
                raise ArithmeticError("coefficient not divisible")
            r[m] = c // k
        return TernaryForm(r, self.degree, new_modulus)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon in monomials(self.degree):
            c = self.terms.get(mon)
            if c:
                m = "*".join(s for s in (_pw("x", mon[0]), _pw("y", mon[1]), _pw("z", mon[2])) if s)
                parts.append(f"{c}*{m}" if m else str(c))
        return " + ".join(parts)



def substitute_int(coeffs: list[int], p: int, q: int, r: int, s: int) -> list[int]:
    """F(pX + qZ, rX + sZ) for an integer binary form (index i = X^i Z^(D-i)).

    Horner scheme over the binary forms L1^(k-j) L2^j, quadratic in the degree.
    """
    D = len(coeffs) - 1
    acc = [coeffs[D]]
    pow2 = [1]
    for k in range(1, D + 1):
        # pow2 *= (rX + sZ); acc = acc * (pX + qZ) + c_{D-k} * pow2
        new_pow = [0] * (k + 1)
        new_acc = [0] * (k + 1)
        for i, v in enumerate(pow2):
            if v:
                new_pow[i] += s * v
                new_pow[i + 1] += r * v
        for i, v in enumerate(acc):
            if v:
                new_acc[i] += q * v
                new_acc[i + 1] += p * v
        c = coeffs[D - k]
        if c:
            for i, v in enumerate(new_pow):
                new_acc[i] += c * v
        acc, pow2 = new_acc, new_pow
    return acc


def transport_int(coeffs: list[int], m) -> list[int]:
    """Integral primitive form vanishing on the image of the zero set under m.

    Normalised so the highest nonzero coefficient is positive; the length
    (degree) is preserved, so a vanishing top coefficient means infinity is
    a zero.
    """
    a, b, c, d = m.entries
    out = substitute_int(coeffs, d, -b, -c, a)
    g = math.gcd(*out)
    if g == 0:
        return out
    top = next(v for v in reversed(out) if v)
    if top < 0:
        g = -g
    return [v // g for v in out]

"""Length-2 Witt vectors W_2(A) over a ring A of characteristic p.

Elements are pairs (a0, a1) with the explicit ring structure

    (x0, x1) + (y0, y1) = (x0 + y0, x1 + y1 - sum_{0<i<p} (C(p,i)/p) x0^i y0^(p-i))
    (x0, x1) * (y0, y1) = (x0 y0, x0^p y1 + y0^p x1)

The coefficient ring is anything with +, -, * and ** on its elements
(finite-field elements, polynomials over a finite field).  The integers
C(p,i)/p are computed in Z first and only then coerced, so no division
happens in characteristic p.
"""

from __future__ import annotations

import functools
from math import comb

from .algebra.finite_field import FqElement, GF
from .algebra.poly import Poly
from .errors import InvalidArgument, RingMismatch


@functools.lru_cache(maxsize=None)
def carry_coefficients(p: int) -> tuple[int, ...]:
    """(C(p,i)/p mod p for i = 0..p); entries 0 and p are zero."""
    return tuple(0 if i in (0, p) else (comb(p, i) // p) % p for i in range(p + 1))


def _ring_of(a):
    if isinstance(a, FqElement):
        return a.field
    if isinstance(a, Poly):
        return a.domain
    raise RingMismatch(f"unsupported Witt coefficient {a!r}")


def _char_of(ring) -> int:
    return getattr(ring, "characteristic", 0)


class W2Element:
    __slots__ = ("a0", "a1", "p")

    def __init__(self, a0, a1, p: int | None = None):
        ring = _ring_of(a0)
        if _ring_of(a1) is not ring:
            raise RingMismatch("Witt coordinates live in different rings")
        char = _char_of(ring)
        if p is None:
            p = char
        elif p != char:
            raise RingMismatch(f"coefficient ring has characteristic {char}, not {p}")
        self.a0, self.a1, self.p = a0, a1, p

    @classmethod
    def over(cls, field, a0, a1=0):
        """Build from plain values over a finite field (or polynomial domain)."""
        if isinstance(field, int):
            field = GF(field)
        return cls(field(a0), field(a1), field.characteristic)

    @classmethod
    def teichmuller(cls, a):
        return cls(a, a - a)

    @property
    def ring(self):
        return _ring_of(self.a0)

    def _zero(self):
        return self.a0 - self.a0

    def _check(self, other):
        if not isinstance(other, W2Element):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch("Witt vectors over different coefficient rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        x0, y0, p = self.a0, other.a0, self.p
        carry = self._zero()
        binoms = carry_coefficients(p)
        # powers of x0 and y0 are shared across the carry sum
        xp = [None] * p
        yp = [None] * (p + 1)
        acc = x0 ** 0 if x0 else None
        for i in range(p):
            xp[i] = acc
            if acc is not None:
                acc = acc * x0
        acc = y0 ** 0 if y0 else None
        for i in range(p + 1):
            yp[i] = acc
            if acc is not None:
                acc = acc * y0
        if x0 and y0:
            for i in range(1, p):
                c = binoms[i]
                if c:
                    carry = carry + xp[i] * yp[p - i] * c
        return W2Element(x0 + y0, self.a1 + other.a1 - carry, p)

    def __neg__(self):
        if self.p == 2:
            return W2Element(self.a0, self.a1 + self.a0 * self.a0, 2)
        return W2Element(-self.a0, -self.a1, self.p)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return w2_scalar(other, self)
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        return W2Element(self.a0 * other.a0,
                         (self.a0 ** p) * other.a1 + (other.a0 ** p) * self.a1, p)

    def __rmul__(self, other):
        if isinstance(other, int):
            return w2_scalar(other, self)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidArgument("negative Witt power")
        result = self.one_like()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def one_like(self):
        return W2Element(self.a0 ** 0, self._zero(), self.p)

    def zero_like(self):
        z = self._zero()
        return W2Element(z, z, self.p)

    def frobenius(self):
        p = self.p
        return W2Element(self.a0 ** p, self.a1 ** p, p)

    def reduction(self):
        return self.a0

    def __eq__(self, other):
        if not isinstance(other, W2Element):
            return NotImplemented
        return self.p == other.p and self.a0 == other.a0 and self.a1 == other.a1

    def __hash__(self):
        return hash((self.p, self.a0, self.a1))

    def is_zero(self):
        return not self.a0 and not self.a1

    def __repr__(self):
        return f"({self.a0},{self.a1})"


def w2_add(x: W2Element, y: W2Element) -> W2Element:
    if not isinstance(y, W2Element):
        raise RingMismatch("adding a Witt vector to a non-Witt value")
    return x + y


def w2_mul(x: W2Element, y: W2Element) -> W2Element:
    if not isinstance(y, W2Element):
        raise RingMismatch("multiplying a Witt vector by a non-Witt value")
    return x * y


def w2_frobenius(x: W2Element) -> W2Element:
    return x.frobenius()


def w2_scalar(n: int, x: W2Element) -> W2Element:
    """n * x by repeated Witt addition (double and add)."""
    if n < 0:
        return w2_scalar(-n, -x)
    result = x.zero_like()
    base = x
    while n:
        if n & 1:
            result = result + base
        n >>= 1
        if n:
            base = base + base
    return result


def w2_scalar_p(x: W2Element) -> W2Element:
    return w2_scalar(x.p, x)


def to_integers_mod_p2(x: W2Element) -> int:
    """The isomorphism W_2(F_p) -> Z/p^2: (a0, a1) -> a0^p + p a1."""
    if not isinstance(x.a0, FqElement) or x.a0.field.m != 1:
        raise RingMismatch("only W_2(F_p) identifies with Z/p^2")
    p = x.p
    return (pow(int(x.a0), p, p * p) + p * int(x.a1)) % (p * p)


def from_integers_mod_p2(n: int, p: int) -> W2Element:
    F = GF(p)
    a0 = n % p
    teich = pow(a0, p, p * p)
    a1 = ((n - teich) % (p * p)) // p
    return W2Element(F(a0), F(a1), p)

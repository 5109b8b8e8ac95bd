"""Exact rational scalars and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
the number-theoretic helpers the rest of the package needs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import InvalidPrime, SpecError

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def _check_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not a prime")


def int_valuation(n: int, p: int):
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_p(r, p: int):
    """Return v_p(r) for a rational ``r``; ``math.inf`` for zero."""
    _check_prime(p)
    r = Fraction(r)
    if r == 0:
        return INF
    return int_valuation(r.numerator, p) - int_valuation(r.denominator, p)


def reduce_mod(r, modulus: int, p: int | None = None) -> int:
    """Image of a p-integral rational in Z/modulus (modulus a power of p)."""
    r = Fraction(r)
    try:
        inv = pow(r.denominator, -1, modulus)
    except ValueError:
        raise InvalidPrime(f"{r} is not integral at {p or modulus}") from None
    return r.numerator * inv % modulus


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or a decimal-fraction string exactly."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            den_i = int(den)
            if den_i == 0:
                raise SpecError(f"zero denominator in {text!r}")
            return Fraction(int(num), den_i)
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"not an exact rational: {text!r}") from None


def format_rational(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def content_of(values) -> Fraction:
    """Positive rational c such that values / c are coprime integers."""
    values = [Fraction(v) for v in values if v != 0]
    if not values:
        return Fraction(1)
    den = math.lcm(*(v.denominator for v in values))
    nums = [int(v * den) for v in values]
    return Fraction(math.gcd(*nums), den)


def primitive_integers(values) -> list[int]:
    """Scale rationals to coprime integers; sign of the last nonzero entry kept."""
    c = content_of(values)
    return [int(Fraction(v) / c) for v in values]

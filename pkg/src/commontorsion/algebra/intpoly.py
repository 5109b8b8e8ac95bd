"""Dense polynomial kernels on plain int lists (lowest degree first).

``zz_*`` work in Z[x], ``fp_*`` in F_p[x] for a prime p.  The zero polynomial
is the empty list.  These are the hot paths behind torsion polynomials, so
they avoid any wrapper objects.
"""

from __future__ import annotations

import math


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


# ---------------------------------------------------------------------------
# Z[x]
# ---------------------------------------------------------------------------

def zz_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return trim(r)


def zz_sub(a, b):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        r[i] -= c
    return trim(r)


def zz_scale(a, k: int):
    if k == 0:
        return []
    return [k * c for c in a]


def zz_mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    r = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                r[i + j] += x * y
    return trim(r)


def zz_pow(a, e: int):
    result = [1]
    while e:
        if e & 1:
            result = zz_mul(result, a)
        e >>= 1
        if e:
            a = zz_mul(a, a)
    return result


def zz_content(a) -> int:
    return math.gcd(*a) if a else 0


def zz_primitive(a):
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    c = zz_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def zz_derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def zz_eval(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def zz_divexact(a, b):
    """Quotient a / b in Z[x]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            qc, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[i - db] = qc
            base = i - db
            for j in range(db + 1):
                r[base + j] -= qc * b[j]
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def zz_prem(a, b):
    """Pseudo-remainder of a by b."""
    db, lb = len(b) - 1, b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        r.pop()  # leading term cancels by construction
        trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [x * f for x in r]
    return r


def _small_primes_for(a, b, count=2):
    out, p = [], 1000003
    while len(out) < count:
        if a[-1] % p and b[-1] % p:
            out.append(p)
        p += 2
        while not _is_small_prime(p):
            p += 2
    return out


def _is_small_prime(n):
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def zz_gcd(a, b):
    """Primitive gcd in Z[x] (positive leading coefficient).

    A reduction modulo a large prime is tried first: when it already reports a
    constant gcd the answer is 1 (reduction cannot lower the gcd degree when
    both leading coefficients survive).  Otherwise the subresultant remainder
    sequence runs over Z.
    """
    a, b = trim(list(a)), trim(list(b))
    if not a:
        return zz_primitive(b)
    if not b:
        return zz_primitive(a)
    if len(a) == 1 or len(b) == 1:
        return [1]
    for p in _small_primes_for(a, b, 1):
        if len(fp_gcd(fp_from_zz(a, p), fp_from_zz(b, p), p)) == 1:
            return [1]
    a, b = zz_primitive(a), zz_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = zz_prem(a, b)
        if not r:
            return zz_primitive(b)
        if len(r) == 1:
            return [1]
        a = b
        div = g * h ** delta
        b = [c // div for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)


def zz_squarefree(a):
    """Primitive squarefree part over Q."""
    a = zz_primitive(a)
    if len(a) <= 2:
        return a
    g = zz_gcd(a, zz_derivative(a))
    if len(g) == 1:
        return a
    return zz_primitive(zz_divexact(a, g))


def zz_substitute_scaled(a, s: int, t: int):
    """Coefficients of t^deg * a(s x / t) -- i.e. a evaluated at x -> s x/t, cleared."""
    n = len(a) - 1
    return [c * s ** i * t ** (n - i) for i, c in enumerate(a)]


# ---------------------------------------------------------------------------
# F_p[x]
# ---------------------------------------------------------------------------

def fp_from_zz(a, p):
    return trim([c % p for c in a])


def fp_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] = (r[i] + c) % p
    return trim(r)


def fp_sub(a, b, p):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        r[i] = (r[i] - c) % p
    return trim(r)


def fp_mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                r[i + j] += x * y
    return trim([c % p for c in r])


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [c % p for c in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - db] = c
            base = i - db
            for j in range(db + 1):
                r[base + j] = (r[base + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def fp_rem(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a, b, p):
    a, b = fp_from_zz(a, p), fp_from_zz(b, p)
    while b:
        a, b = b, fp_rem(a, b, p)
    return fp_monic(a, p)


def fp_derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def fp_powmod(a, e: int, m, p):
    result = [1]
    a = fp_rem(a, m, p)
    while e:
        if e & 1:
            result = fp_rem(fp_mul(result, a, p), m, p)
        e >>= 1
        if e:
            a = fp_rem(fp_mul(a, a, p), m, p)
    return result


def fp_squarefree(a, p):
    """Monic squarefree part in F_p[x], including the p-th power branch."""
    a = fp_monic(fp_from_zz(a, p), p)
    if len(a) <= 2:
        return a
    da = fp_derivative(a, p)
    if not da:
        # a = h(x^p) = h(x)^p over F_p
        return fp_squarefree(a[::p], p)
    g = fp_gcd(a, da, p)
    if len(g) == 1:
        return a
    w = fp_divmod(a, g, p)[0]
    rest = fp_squarefree(g, p)
    common = fp_gcd(w, rest, p)
    return fp_monic(fp_mul(w, fp_divmod(rest, common, p)[0], p), p)

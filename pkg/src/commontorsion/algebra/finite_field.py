"""Prime and small-extension finite fields.

``GF(p, m)`` builds F_{p^m} as F_p[t]/(M(t)) where M is a fixed irreducible
modulus chosen deterministically (sparsest first, then lexicographic), so
every run uses the same representation.  Elements are immutable
:class:`FqElement` wrappers around coefficient tuples; the field also exposes
raw tuple arithmetic for hot loops.
"""

from __future__ import annotations

import functools
from array import array
from itertools import product

from ..errors import InvalidPrime, RingMismatch
from .rational import is_prime

MODULI_VERSION = "sparse-first-v1"


# ---------------------------------------------------------------------------
# dense int-list polynomials over F_p (low degree first); used for modulus
# selection and inversion only
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lc = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv_lc % p
            base = i - df
            for j in range(df + 1):
                a[base + j] = (a[base + j] - c * f[j]) % p
    return _trim([x % p for x in a[:df]])


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _pmod(res, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    a = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, a, f, p)
        a = _pmulmod(a, a, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f, p) -> bool:
    """Rabin's test for a monic int-list polynomial over F_p."""
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def frob_power(k):
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, f, p)
        return r

    if _trim([a % p for a in _sub_lists(frob_power(m), x)]) != []:
        return False
    for r in _prime_factors(m):
        h = _sub_lists(frob_power(m // r), x)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _sub_lists(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _candidate_moduli(p, m):
    """Monic degree-m candidates, sparsest first."""
    units = range(1, p)
    for b in units:
        yield [b] + [0] * (m - 1) + [1]
    for j in range(1, m):
        for a, b in product(units, units):
            f = [0] * (m + 1)
            f[0], f[j], f[m] = b, a, 1
            yield f
    for j in range(2, m):
        for i in range(1, j):
            for a, b, c in product(units, units, units):
                f = [0] * (m + 1)
                f[0], f[i], f[j], f[m] = c, b, a, 1
                yield f
    for tail in product(range(p), repeat=m):
        yield list(tail) + [1]


@functools.lru_cache(maxsize=None)
def fixed_modulus(p: int, m: int) -> tuple:
    """The recorded irreducible modulus for F_{p^m} (coefficients low first)."""
    if m == 1:
        return (0, 1)
    for f in _candidate_moduli(p, m):
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def GF(p: int, m: int = 1) -> "FiniteField":
    return _cached_field(int(p), int(m))


@functools.lru_cache(maxsize=None)
def _cached_field(p, m):
    return FiniteField(p, m)


class FiniteField:
    """F_{p^m}; use :func:`GF` to obtain the cached instance."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise InvalidPrime(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = fixed_modulus(p, m)
        self._tail = [(j, c) for j, c in enumerate(self.modulus[:-1]) if c]
        bound = m * (p - 1) ** 2
        self._typecode = None
        for tc in ("H", "I", "Q"):
            if bound < 2 ** (8 * array(tc).itemsize):
                self._typecode = tc
                self._width = array(tc).itemsize
                break
        self.zero = FqElement(self, (0,) * m)
        self.one = FqElement(self, (1,) + (0,) * (m - 1))
        self._nonresidue = None

    # -- identity -----------------------------------------------------------
    characteristic = property(lambda self: self.p)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (GF, (self.p, self.m))

    def describe_modulus(self) -> str:
        terms = []
        for i in range(self.m, -1, -1):
            c = self.modulus[i]
            if c:
                mon = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mon if c == 1 and i else f"{c}*{mon}" if i else str(c))
        return " + ".join(terms)

    # -- construction -------------------------------------------------------
    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            if value.field is not self:
                if value.field.p == self.p and value.field.m == 1:
                    return self(value.coeffs[0])
                raise RingMismatch(f"cannot coerce {value.field} element into {self}")
            return value
        if isinstance(value, int):
            return FqElement(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.m:
            raise ValueError("too many coordinates")
        return FqElement(self, coeffs + (0,) * (self.m - len(coeffs)))

    @property
    def gen(self) -> "FqElement":
        if self.m == 1:
            return self(0)  # no distinguished generator for the prime field
        return self((0, 1))

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.m):
            yield FqElement(self, tuple(reversed(coeffs)))

    def random(self, rng) -> "FqElement":
        """A uniform element drawn from ``rng`` (a random.Random)."""
        return FqElement(self, tuple(rng.randrange(self.p) for _ in range(self.m)))

    # -- raw tuple arithmetic ----------------------------------------------
    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def smul(self, k: int, a):
        p = self.p
        return tuple(k * x % p for x in a)

    def mul(self, a, b):
        m, p = self.m, self.p
        if m == 1:
            return (a[0] * b[0] % p,)
        if self._typecode is not None:
            tc, w = self._typecode, self._width
            ia = int.from_bytes(array(tc, a).tobytes(), "little")
            ib = int.from_bytes(array(tc, b).tobytes(), "little")
            r = array(tc)
            r.frombytes((ia * ib).to_bytes((2 * m - 1) * w, "little"))
            r = r.tolist()
        else:
            r = [0] * (2 * m - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        r[i + j] += x * y
        tail = self._tail
        for i in range(2 * m - 2, m - 1, -1):
            c = r[i] % p
            if c:
                base = i - m
                for j, mj in tail:
                    r[base + j] -= c * mj
        return tuple(x % p for x in r[:m])

    def sqr(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one.coeffs
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        p, m = self.p, self.m
        if not any(a):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if m == 1:
            return (pow(a[0], -1, p),)
        # extended Euclid in F_p[t] against the modulus
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _trim([x % p for x in _sub_lists(s0, _pmul(q, s1, p))])
        c = pow(r0[0], -1, p)
        s = [x * c % p for x in s0] + [0] * m
        return tuple(s[:m])

    def is_zero(self, a) -> bool:
        return not any(a)

    def quadratic_nonresidue(self):
        if self._nonresidue is None:
            if self.p == 2:
                raise ValueError("characteristic 2 has no quadratic non-residues")
            e = (self.order - 1) // 2
            one = self.one.coeffs
            for coeffs in product(range(self.p), repeat=self.m):
                c = tuple(reversed(coeffs))
                if any(c) and self.pow(c, e) != one:
                    self._nonresidue = c
                    break
        return self._nonresidue

    def is_square(self, a) -> bool:
        if not any(a):
            return True
        if self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one.coeffs

    def sqrt(self, a):
        """A square root of ``a`` (Tonelli-Shanks), or ``None``."""
        if not any(a):
            return a
        q = self.order
        if self.p == 2:
            return self.pow(a, q // 2)
        if not self.is_square(a):
            return None
        if q % 4 == 3:
            return self.pow(a, (q + 1) // 4)
        t, s = q - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        z = self.pow(self.quadratic_nonresidue(), t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        one = self.one.coeffs
        r = s
        while b != one:
            i, bb = 0, b
            while bb != one:
                bb = self.mul(bb, bb)
                i += 1
            g = z
            for _ in range(r - i - 1):
                g = self.mul(g, g)
            x = self.mul(x, g)
            z = self.mul(g, g)
            b = self.mul(b, z)
            r = i
        return x


def _pmul(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    return res


def _pdivmod(a, b, p):
    a = [x % p for x in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


class FqElement:
    """An element of a :class:`FiniteField`; immutable and hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field:
                return self.field(other)
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElement(self.field, self.field.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElement(self.field, self.field.sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return FqElement(self.field, self.field.smul(other, self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElement(self.field, self.field.mul(self.coeffs, self.field.inv(other.coeffs)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.coeffs, e))

    def inverse(self):
        return FqElement(self.field, self.field.inv(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __int__(self):
        if any(self.coeffs[1:]):
            raise ValueError("not in the prime field")
        return self.coeffs[0]

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def frobenius(self, times: int = 1):
        return self ** (self.field.p ** times)

    def is_square(self) -> bool:
        return self.field.is_square(self.coeffs)

    def sqrt(self):
        r = self.field.sqrt(self.coeffs)
        return None if r is None else FqElement(self.field, r)

    def __repr__(self):
        if self.field.m == 1:
            return str(self.coeffs[0])
        terms = []
        for i in range(self.field.m - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if not mon:
                    terms.append(str(c))
                else:
                    terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms) if terms else "0"


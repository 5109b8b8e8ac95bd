"""Torsion points of elliptic curves over prime fields, found by group
structure rather than division polynomials.

For n coprime to l the Frobenius satisfies X^2 - aX + l on E[n], so E[n] is
rational over F_{l^k} where k is the order of X in (Z/n)[X]/(X^2 - aX + l).
The group order over that field comes from the trace recurrence; a basis of
E[n] is then extracted from random points (Sylow projection plus a
Pohlig-Hellman correction when the Sylow subgroup is not homocyclic) and all
n^2 combinations are enumerated in Jacobian coordinates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .algebra.finite_field import GF, FiniteField, FqElement
from .algebra.poly import Poly
from .errors import CoverageError, InvalidArgument, SingularCurve, UnsupportedPrime
from .weierstrass import WeierstrassCurve


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------

def count_points(curve: WeierstrassCurve) -> int:
    """#E(F_l) by summing quadratic characters (l an odd prime)."""
    F = curve.field
    if F.m != 1:
        raise InvalidArgument("brute-force counting is over prime fields only")
    p = F.p
    if p == 2:
        raise UnsupportedPrime("characteristic 2")
    a1, a2, a3, a4, a6 = (int(c) for c in curve.coefficients)
    half = (p - 1) // 2
    total = 1
    for x in range(p):
        # y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6, discriminant in y
        lin = a1 * x + a3
        d = (lin * lin + 4 * (x * x * x + a2 * x * x + a4 * x + a6)) % p
        if d == 0:
            total += 1
        elif pow(d, half, p) == 1:
            total += 2
    return total


def trace_of_frobenius(curve: WeierstrassCurve) -> int:
    return curve.field.p + 1 - count_points(curve)


def count_over_extension(a: int, l: int, k: int) -> int:
    """#E(F_{l^k}) from the trace a over F_l."""
    s_prev, s = 2, a
    for _ in range(k - 1):
        s_prev, s = s, a * s - l * s_prev
    if k == 0:
        s = 2
    return l ** k + 1 - s


def frobenius_order_mod(a: int, l: int, n: int) -> int:
    """Order of X in (Z/n)[X]/(X^2 - aX + l): E[n] is defined over F_{l^k}."""
    if n == 1:
        return 1
    u, v = 0, 1
    for k in range(1, n * n + 1):
        if u % n == 1 and v % n == 0:
            return k
        u, v = (-v * l) % n, (u + v * a) % n
    raise AssertionError("Frobenius is not a unit modulo n")  # l coprime to n


# ---------------------------------------------------------------------------
# Jacobian arithmetic on y^2 = x^3 + A x + B over a FiniteField
# ---------------------------------------------------------------------------

class _Arith:
    def __init__(self, K: FiniteField, A, B):
        self.K = K
        self.A = K(A).coeffs
        self.B = K(B).coeffs
        self.zero = K.zero.coeffs
        self.one = K.one.coeffs
        self.inf = (self.one, self.one, self.zero)

    def is_inf(self, P):
        return not any(P[2])

    def double(self, P):
        K = self.K
        X, Y, Z = P
        if not any(Z) or not any(Y):
            return self.inf
        XX = K.mul(X, X)
        YY = K.mul(Y, Y)
        YYYY = K.mul(YY, YY)
        ZZ = K.mul(Z, Z)
        S = K.smul(4, K.mul(X, YY))
        M = K.add(K.smul(3, XX), K.mul(self.A, K.mul(ZZ, ZZ)))
        X3 = K.sub(K.mul(M, M), K.smul(2, S))
        Y3 = K.sub(K.mul(M, K.sub(S, X3)), K.smul(8, YYYY))
        Z3 = K.smul(2, K.mul(Y, Z))
        return (X3, Y3, Z3)

    def add(self, P, Q):
        K = self.K
        if not any(P[2]):
            return Q
        if not any(Q[2]):
            return P
        X1, Y1, Z1 = P
        X2, Y2, Z2 = Q
        Z1Z1 = K.mul(Z1, Z1)
        Z2Z2 = K.mul(Z2, Z2)
        U1 = K.mul(X1, Z2Z2)
        U2 = K.mul(X2, Z1Z1)
        S1 = K.mul(Y1, K.mul(Z2, Z2Z2))
        S2 = K.mul(Y2, K.mul(Z1, Z1Z1))
        H = K.sub(U2, U1)
        r = K.sub(S2, S1)
        if not any(H):
            if not any(r):
                return self.double(P)
            return self.inf
        HH = K.mul(H, H)
        HHH = K.mul(H, HH)
        V = K.mul(U1, HH)
        X3 = K.sub(K.sub(K.mul(r, r), HHH), K.smul(2, V))
        Y3 = K.sub(K.mul(r, K.sub(V, X3)), K.mul(S1, HHH))
        Z3 = K.mul(K.mul(Z1, Z2), H)
        return (X3, Y3, Z3)

    def neg(self, P):
        return (P[0], self.K.neg(P[1]), P[2])

    def mul(self, P, n: int):
        if n < 0:
            P, n = self.neg(P), -n
        result = self.inf
        base = P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.double(base)
        return result

    def affine(self, P):
        if self.is_inf(P):
            return None
        K = self.K
        zi = K.inv(P[2])
        zi2 = K.mul(zi, zi)
        return (K.mul(P[0], zi2), K.mul(P[1], K.mul(zi, zi2)))

    def equal(self, P, Q):
        if self.is_inf(P) or self.is_inf(Q):
            return self.is_inf(P) and self.is_inf(Q)
        return self.affine(P) == self.affine(Q)

    def random_point(self, rng):
        K = self.K
        while True:
            x = K.random(rng).coeffs
            rhs = K.add(K.mul(x, K.add(K.mul(x, x), self.A)), self.B)
            y = K.sqrt(rhs)
            if y is None:
                continue
            if rng.random() < 0.5:
                y = K.neg(y)
            return (x, y, self.one)

    def batch_x(self, points):
        """Affine x-coordinates for a list of finite Jacobian points."""
        K = self.K
        zs = [K.mul(P[2], P[2]) for P in points]
        prefix = []
        acc = self.one
        for z in zs:
            prefix.append(acc)
            acc = K.mul(acc, z)
        inv = K.inv(acc)
        out = [None] * len(points)
        for i in range(len(points) - 1, -1, -1):
            out[i] = K.mul(points[i][0], K.mul(inv, prefix[i]))
            inv = K.mul(inv, zs[i])
        return out


def _prime_power_parts(n):
    parts, d = [], 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            parts.append((d, e))
        d += 1
    if n > 1:
        parts.append((n, 1))
    return parts


def _v(n, r):
    v = 0
    while n % r == 0:
        n //= r
        v += 1
    return v


def _order_exponent(ar, T, r, limit):
    """Smallest c with r^c T = O (None if above limit)."""
    c = 0
    while not ar.is_inf(T):
        if c >= limit:
            return None
        T = ar.mul(T, r)
        c += 1
    return c


def _dlog(ar, G, H, r, c):
    """t with t G = H in the cyclic group <G> of order r^c (Pohlig-Hellman)."""
    gamma = ar.mul(G, r ** (c - 1)) if c else ar.inf
    x = 0
    for i in range(c):
        Hi = ar.mul(ar.add(H, ar.neg(ar.mul(G, x))), r ** (c - 1 - i))
        for d in range(r):
            if ar.equal(ar.mul(gamma, d), Hi):
                break
        else:
            raise ArithmeticError("discrete logarithm does not exist")
        x += d * r ** i
    return x


def _sylow_basis(ar, M, r, e, rng, max_rounds=200):
    """Basis (U1, U2) of E[r^e] inside E(K), |E(K)| = M."""
    s = _v(M, r)
    cof = M // r ** s
    samples = []
    alpha, T1 = -1, None
    for _ in range(max_rounds):
        T = ar.mul(ar.random_point(rng), cof)
        c = _order_exponent(ar, T, r, s)
        samples.append(T)
        if c > alpha:
            alpha, T1 = c, T
        if len(samples) < 4:
            continue
        beta = s - alpha
        if beta < e:
            continue
        basis = []
        for _ in range(40):
            T = ar.mul(ar.random_point(rng), cof)
            if alpha > beta:
                G = ar.mul(T1, r ** beta)
                try:
                    t = _dlog(ar, G, ar.mul(T, r ** beta), r, alpha - beta)
                except ArithmeticError:
                    break  # alpha was not the true exponent; sample more
                T = ar.add(T, ar.neg(ar.mul(T1, t)))
            U = ar.mul(T, r ** (beta - e))
            if not ar.is_inf(ar.mul(U, r ** e)):
                break
            low = ar.mul(U, r ** (e - 1))
            if ar.is_inf(low):
                continue
            if not basis:
                basis.append((U, low))
                continue
            low1 = basis[0][1]
            if any(ar.equal(ar.mul(low1, j), low) for j in range(r)):
                continue
            return basis[0][0], U
    raise ArithmeticError("failed to find a torsion basis")


@dataclass
class TorsionBasis:
    n: int
    field: FiniteField
    arith: _Arith
    P: tuple
    Q: tuple


def torsion_basis(curve: WeierstrassCurve, n: int, trace: int | None = None,
                  max_extension: int | None = None, seed: int = 0) -> TorsionBasis:
    F = curve.field
    l = F.p
    if not curve.is_short:
        raise InvalidArgument("torsion enumeration works on short models")
    if curve.is_singular():
        raise SingularCurve(f"{curve} is singular")
    if math.gcd(n, l) != 1:
        raise InvalidArgument(f"order {n} is not coprime to the characteristic {l}")
    a = trace_of_frobenius(curve) if trace is None else trace
    k = frobenius_order_mod(a, l, n)
    if max_extension is not None and k > max_extension:
        raise CoverageError(f"E[{n}] needs F_{l}^{k}, above the cap {max_extension}")
    K = GF(l, k)
    M = count_over_extension(a, l, k)
    if M % (n * n):
        raise AssertionError("E[n] is not rational over the computed field")
    ar = _Arith(K, int(curve.a4), int(curve.a6))
    rng = random.Random(hash((seed, l, k, n, int(curve.a4), int(curve.a6))) & 0xFFFFFFFF)
    P, Q = ar.inf, ar.inf
    for r, e in _prime_power_parts(n):
        U1, U2 = _sylow_basis(ar, M, r, e, rng)
        P, Q = ar.add(P, U1), ar.add(Q, U2)
    return TorsionBasis(n, K, ar, P, Q)


def torsion_x_by_order(curve: WeierstrassCurve, n: int, **kw) -> dict[int, frozenset]:
    """{d: x-coordinates of points of exact order d} for all d | n, d > 1."""
    if n == 1:
        return {}
    basis = torsion_basis(curve, n, **kw)
    ar = basis.arith
    points, orders = [], []
    row = ar.inf
    for i in range(n):
        pt = row
        for j in range(n):
            d = n // math.gcd(math.gcd(i, j), n)
            if d > 1:
                points.append(pt)
                orders.append(d)
            pt = ar.add(pt, basis.Q)
        row = ar.add(row, basis.P)
    xs = ar.batch_x(points) if points else []
    out: dict[int, set] = {}
    K = basis.field
    for x, d in zip(xs, orders):
        out.setdefault(d, set()).add(FqElement(K, x))
    return {d: frozenset(v) for d, v in out.items()}


@dataclass
class TorsionEnumeration:
    """x-coordinates of torsion points grouped by exact order.

    ``by_order[d]`` is a frozenset of elements of some GF(l, k_d);
    ``excluded`` lists orders divisible by l; ``uncovered`` those skipped
    because their field exceeded the extension cap.
    """

    prime: int
    bound: int
    by_order: dict = field(default_factory=dict)
    excluded: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.uncovered


def torsion_enumerate_ff(curve: WeierstrassCurve, N: int,
                         max_extension: int | None = None) -> TorsionEnumeration:
    """Enumerate points of exact order 2..N on a curve over F_l.

    Long models are handled through their short form and the x-coordinates
    are shifted back to the input model.
    """
    F = curve.field
    if F.m != 1:
        raise InvalidArgument("curves over prime fields only")
    short, x_shift = curve, 0
    if not curve.is_short:
        short, shift = curve.short_form()
        x_shift = -shift  # x_input = x_short - b2/12
    trace = trace_of_frobenius(short)
    result = TorsionEnumeration(F.p, N)
    for d in range(2, N + 1):
        if d % F.p == 0:
            result.excluded.append(d)
            continue
        try:
            xs = torsion_x_by_order(short, d, trace=trace, max_extension=max_extension).get(d, frozenset())
        except CoverageError:
            result.uncovered.append(d)
            continue
        if x_shift:
            xs = frozenset(x + x_shift for x in xs)
        result.by_order[d] = xs
    return result


def orbit_min_polys(values) -> dict:
    """Group Galois-stable extension elements into Frobenius orbits.

    Returns {minimal polynomial coefficients over F_l (low first, monic): orbit size}.
    """
    remaining = set(values)
    out = {}
    while remaining:
        v = remaining.pop()
        F = v.field
        orbit = [v]
        w = v ** F.p
        while w != v:
            orbit.append(w)
            remaining.discard(w)
            w = w ** F.p
        poly = Poly.from_roots(orbit, F)
        key = tuple(int(c) for c in poly.coeffs)
        out[key] = len(orbit)
    return out

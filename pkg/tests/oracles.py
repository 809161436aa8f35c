"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package's arithmetic: field elements are coefficient
lists reduced by schoolbook long division.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


class NaiveField:
    def __init__(self, p: int, modulus: list[int]):
        self.p = p
        self.mod = list(modulus)
        self.f = len(modulus) - 1
        self.q = p**self.f

    def dec(self, n: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(n % self.p)
            n //= self.p
        return out

    def enc(self, v: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(v))

    def add(self, x: int, y: int) -> int:
        return self.enc([(a + b) % self.p for a, b in zip(self.dec(x), self.dec(y))])

    def sub(self, x: int, y: int) -> int:
        return self.enc([(a - b) % self.p for a, b in zip(self.dec(x), self.dec(y))])

    def mul(self, x: int, y: int) -> int:
        a, b = self.dec(x), self.dec(y)
        prod = [0] * (2 * self.f - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
        for k in range(len(prod) - 1, self.f - 1, -1):
            c = prod[k] % self.p
            prod[k] = 0
            for t in range(self.f):
                prod[k - self.f + t] -= c * self.mod[t]
        return self.enc([c % self.p for c in prod[: self.f]])

    def pow(self, x: int, n: int) -> int:
        r = self.const(1)
        for _ in range(n):
            r = self.mul(r, x)
        return r

    def const(self, k: int) -> int:
        return k % self.p

    def inv(self, x: int) -> int:
        for y in range(1, self.q):
            if self.mul(x, y) == 1:
                return y
        raise ZeroDivisionError

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def neg(self, x: int) -> int:
        return self.sub(0, x)


def phi_p3(F: NaiveField, lam: int, z: int):
    """Hand-derived m = 1 map: z^3 (z^3 + lam(lam+1))^2 / ((lam+1) z^3 + lam^2)^2; None at a pole."""
    z3 = F.pow(z, 3)
    top = F.add(z3, F.mul(lam, F.add(lam, 1)))
    bot = F.add(F.mul(F.add(lam, 1), z3), F.mul(lam, lam))
    if bot == 0:
        return None
    return F.div(F.mul(z3, F.mul(top, top)), F.mul(bot, bot))


def curve_points(F: NaiveField, lam: int) -> list[tuple[int, int]]:
    """Affine points of y^2 = x(x-1)(x-lam) by brute force over all (x, y)."""
    pts = []
    for x in range(F.q):
        r = F.mul(F.mul(x, F.sub(x, 1)), F.sub(x, lam))
        for y in range(F.q):
            if F.mul(y, y) == r:
                pts.append((x, y))
    return pts


def det_fraction(M: list[list[int]]) -> Fraction:
    """Leibniz determinant over Q, for small integer matrices."""
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def count_monic_irreducibles(p: int, n: int) -> int:
    """Necklace formula (1/n) sum_{d | n} mu(d) p^(n/d)."""

    def mu(k: int) -> int:
        res, d = 1, 2
        while d * d <= k:
            if k % d == 0:
                k //= d
                if k % d == 0:
                    return 0
                res = -res
            d += 1
        return -res if k > 1 else res

    return sum(mu(d) * p ** (n // d) for d in range(1, n + 1) if n % d == 0) // n

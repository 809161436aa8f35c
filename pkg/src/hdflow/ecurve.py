"""Legendre curves y^2 = x(x-1)(x-lambda): group law, and x([p]Q) by determinants.

The determinant route (``xp_via_determinant``) and plain double-and-add
(``ec_mul``) are independent; the test-suite checks one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import NamedTuple, Union

from .errors import (
    DegenerateBasePointError,
    IndeterminateError,
    PointNotOnCurveError,
    SignResolutionFailed,
)
from .ff import INF, FieldCtx, FieldElement, prime_factors
from .matrix import det, drop_column, kernel_cofactors
from .poly import BiPoly, UniPoly


class CurvePoint(NamedTuple):
    x: FieldElement
    y: FieldElement


Point = Union[CurvePoint, type(INF)]


@dataclass(frozen=True, eq=False)
class Curve:
    ctx: FieldCtx
    lam: FieldElement

    def __post_init__(self):
        self.ctx._check(self.lam)
        if self.lam == 0 or self.lam == 1:
            raise ValueError("singular Legendre curve: lambda in {0, 1}")

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def m(self) -> int:
        return (self.ctx.p - 1) // 2

    def __reduce__(self):
        return (Curve, (self.ctx, self.lam))

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * (x - 1) * (x - self.lam)

    def contains(self, P) -> bool:
        if P is INF:
            return True
        return P.y * P.y == self.rhs(P.x)

    def _check(self, P) -> None:
        if not self.contains(P):
            raise PointNotOnCurveError(f"{P} is not on y^2 = x(x-1)(x-{self.lam.n})")

    def points(self) -> list:
        """All rational points, INF first, then by (x, y) encoding."""
        out = [INF]
        for x in self.ctx.elements():
            roots = self.ctx.sqrt(self.rhs(x))
            if roots:
                out.extend(CurvePoint(x, y) for y in roots)
        return out

    @cached_property
    def order(self) -> int:
        """#C(F_q) = q + 1 + sum over x of the quadratic character of x(x-1)(x-lambda)."""
        ctx = self.ctx
        total = ctx.q + 1
        for x in ctx.elements():
            r = self.rhs(x)
            if r:
                total += 1 if ctx.is_square(r.n) else -1
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and self.ctx == other.ctx and self.lam == other.lam

    def __hash__(self) -> int:
        return hash((self.ctx, self.lam.n))


def ec_neg(P):
    if P is INF:
        return INF
    return CurvePoint(P.x, -P.y)


def _add(c: Curve, P, Q):
    if P is INF:
        return Q
    if Q is INF:
        return P
    if P.x == Q.x:
        if P.y != Q.y or not P.y:
            return INF
        x = P.x
        s = (3 * x * x - 2 * (1 + c.lam) * x + c.lam) / (2 * P.y)
    else:
        s = (Q.y - P.y) / (Q.x - P.x)
    x3 = s * s + 1 + c.lam - P.x - Q.x
    return CurvePoint(x3, s * (P.x - x3) - P.y)


def ec_add(c: Curve, P, Q):
    c._check(P)
    c._check(Q)
    return _add(c, P, Q)


def _mul(c: Curve, n: int, P):
    if n < 0:
        return _mul(c, -n, ec_neg(P))
    result = INF
    addend = P
    while n:
        if n & 1:
            result = _add(c, result, addend)
        addend = _add(c, addend, addend)
        n >>= 1
    return result


def ec_mul(c: Curve, n: int, P):
    """[n]P by double-and-add; negative n goes through ec_neg."""
    c._check(P)
    return _mul(c, n, P)


def x_coord(P):
    """The projection C -> P^1."""
    return INF if P is INF else P.x


def point_order(c: Curve, P) -> int:
    """Smallest n >= 1 with [n]P = INF, found among the divisors of #C(F_q)."""
    c._check(P)
    n = c.order
    for r in prime_factors(n):
        while n % r == 0 and _mul(c, n // r, P) is INF:
            n //= r
    return n


def point_order_naive(c: Curve, P) -> int:
    """Order by accumulating P, 2P, ... up to the Hasse bound."""
    c._check(P)
    q = c.ctx.q
    bound = q + 1 + 2 * int(q**0.5) + 2
    acc = P
    for n in range(1, bound + 1):
        if acc is INF:
            return n
        acc = _add(c, acc, P)
    raise AssertionError("order exceeds the Hasse bound")


def is_p_coprime_torsion(c: Curve, P) -> bool:
    return point_order(c, P) % c.p != 0


def lift_x(c: Curve, a: FieldElement) -> tuple[Curve, list]:
    """Points over a (in c's field when possible, otherwise in its quadratic extension).

    Returns the curve the points live on, and the one or two points with x = a.
    """
    c.ctx._check(a)
    roots = c.ctx.sqrt(c.rhs(a))
    if roots is not None:
        return c, [CurvePoint(a, y) for y in roots]
    big, emb = c.ctx.quadratic_extension()
    c2 = Curve(big, emb(c.lam))
    a2 = emb(a)
    roots = big.sqrt(c2.rhs(a2))
    assert roots is not None, "every element is a square in the quadratic extension"
    return c2, [CurvePoint(a2, y) for y in roots]


# --- gamma coefficients and the B matrix ----------------------------------------------------


def gamma_closed(lam, m: int, n: int):
    """(-1)^(m+n) * sum_{i+j=n-m, 0<=i,j<=m} C(m,i) C(m,j) lam^(m-j)."""
    total = lam * 0
    k = n - m
    for i in range(max(0, k - m), min(m, k) + 1):
        j = k - i
        total = total + comb(m, i) * comb(m, j) * lam ** (m - j)
    return total if (m + n) % 2 == 0 else -total


def gamma_table(lam: FieldElement, m: int) -> dict[int, FieldElement]:
    """gamma_m..gamma_3m, from the closed form, asserted equal to the direct expansion."""
    closed = {n: gamma_closed(lam, m, n) for n in range(m, 3 * m + 1)}
    ctx = lam.ctx
    h = UniPoly(ctx, [ctx.zero, lam, -(1 + lam), ctx.one]) ** m
    for n in range(m, 3 * m + 1):
        if h.coeff(n) != closed[n]:
            raise AssertionError(f"gamma_{n} closed form disagrees with the expansion")
    return closed


def gamma_bipoly(p: int) -> dict[int, BiPoly]:
    """Closed-form gamma_n as polynomials in lambda (no a-dependence)."""
    m = (p - 1) // 2
    L = BiPoly.lam(p)
    return {n: gamma_closed(L, m, n) for n in range(m, 3 * m + 1)}


def gamma_expansion_bipoly(p: int) -> dict[int, BiPoly]:
    """gamma_n read off from (x(x-1)(x-lambda))^m, with x carried in the 'a' slot."""
    m = (p - 1) // 2
    L = BiPoly.lam(p)
    X = BiPoly.a(p)
    h = (X * (X - 1) * (X - L)) ** m
    terms = h.to_dict()
    out = {}
    for n in range(m, 3 * m + 1):
        acc = BiPoly.zero(p)
        for (i, j), cval in terms.items():
            if j == n:
                acc = acc + BiPoly.monomial(p, i, 0, cval)
        out[n] = acc
    return out


def b_matrix(gammas, ap, m: int) -> list[list]:
    """(m+1) x (m+2): entry (r, c) is gamma_{m+r-c} on/below the diagonal, a^p gamma_{3m+1-(c-r)} above."""
    rows = []
    for r in range(m + 1):
        row = []
        for col in range(m + 2):
            if col <= r:
                row.append(gammas[m + r - col])
            else:
                row.append(ap * gammas[3 * m + 1 - (col - r)])
        rows.append(row)
    return rows


def _check_base(c: Curve, a) -> None:
    if a is INF:
        raise DegenerateBasePointError("base point at infinity")
    c.ctx._check(a)
    if a == 0 or a == 1 or a == c.lam:
        raise DegenerateBasePointError(f"a = {a.n} is a 2-torsion x-coordinate")


def build_B(c: Curve, a: FieldElement) -> list[list[FieldElement]]:
    _check_base(c, a)
    return b_matrix(gamma_table(c.lam, c.m), a**c.p, c.m)


def build_B_symbolic(p: int) -> list[list[BiPoly]]:
    m = (p - 1) // 2
    return b_matrix(gamma_bipoly(p), BiPoly.monomial(p, 0, p), m)


def b_zero(B: list[list]) -> list[list]:
    return drop_column(B, 0)


def b_last(B: list[list]) -> list[list]:
    return drop_column(B, len(B[0]) - 1)


def xp_via_determinant(c: Curve, a: FieldElement):
    """x([p]Q) = (1/a^p) (det B_0 / det B_{m+1})^2, INF when det B_{m+1} = 0."""
    B = build_B(c, a)
    one = c.ctx.one
    d0 = det(b_zero(B), one)
    d1 = det(b_last(B), one)
    if not d1:
        if not d0:
            raise IndeterminateError(f"det B_0 = det B_m+1 = 0 at a = {a.n}")
        return INF
    r = d0 / d1
    return r * r / a**c.p


def beta_vector(c: Curve, a: FieldElement) -> list[FieldElement]:
    return kernel_cofactors(build_B(c, a), c.ctx.one)


@dataclass
class FactorizationVerdict:
    a: FieldElement
    a_p: object
    f: UniPoly
    g: UniPoly
    residual: UniPoly

    @property
    def ok(self) -> bool:
        return not self.residual


def factorization_check(c: Curve, Q: CurvePoint) -> FactorizationVerdict:
    """Rebuild f, g with (x-a)^p (x-a_p) = f^2 - x(x-1)(x-lambda) g^2 and report the residual."""
    if Q is INF:
        raise DegenerateBasePointError("Q must be finite")
    c._check(Q)
    a, b = Q
    _check_base(c, a)
    if not b:
        raise DegenerateBasePointError("b = 0")
    ctx, p, m = c.ctx, c.p, c.m
    f = UniPoly(ctx, beta_vector(c, a))
    h = UniPoly(ctx, [ctx.zero, c.lam, -(1 + c.lam), ctx.one])
    modulus = UniPoly.monomial(ctx, p) - a**p  # (x - a)^p in characteristic p
    reduced = (f * h**m) % modulus
    g = None
    bp = b**p
    for sign in (1, -1):
        cand = reduced * (sign * bp).inv()
        if cand.degree <= m - 1:
            g = cand
            break
    if g is None:
        raise SignResolutionFailed(f"no sign gives deg g <= {m - 1} at a = {a.n}")
    a_p = xp_via_determinant(c, a)
    if a_p is INF:
        # [p]Q = O: beta_{m+1} = 0 and the identity drops to kappa (x - a)^p
        lhs = f * f - h * g * g
        expected = modulus * lhs.lc if lhs else modulus
    else:
        s = f.coeff(m + 1).inv()
        f, g = f * s, g * s
        lhs = f * f - h * g * g
        expected = modulus * UniPoly(ctx, [-a_p, ctx.one])
    return FactorizationVerdict(a, a_p, f, g, lhs - expected)

"""The self-map phi_{lambda,p} of P^1 induced by the Higgs-de Rham flow with poles {0, 1, lambda, inf}.

Two independent constructions are provided:

* pointwise, from the m x (m+1) matrix A of the ``delta`` values at a base point
  ``a`` (``selfmap_eval``), and
* as a reduced rational map in z, from the same matrices with z^p treated as an
  indeterminate (``selfmap_rational``).

``selfmap_closed_form`` holds the hand-expanded maps for p = 3, 5, 7, and
``grading_polynomial`` gives the linear polynomial whose root is phi(a).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import IndexOutOfRangeError, InternalError, UnsupportedPrimeError
from .ff import INF, FieldCtx, FieldElement
from .matrix import det, det_ring, drop_column
from .poly import BiPoly, UniPoly

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SelfMapCtx:
    ctx: FieldCtx
    lam: FieldElement

    def __post_init__(self):
        self.ctx._check(self.lam)
        if self.lam == 0 or self.lam == 1:
            raise ValueError("lambda must avoid {0, 1}")

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def m(self) -> int:
        return (self.ctx.p - 1) // 2

    @cached_property
    def rational(self) -> "RationalMap":
        return selfmap_rational(self)

    def __call__(self, a):
        return selfmap_eval(self, a)

    def __reduce__(self):
        return (SelfMapCtx, (self.ctx, self.lam))


class RationalMap:
    """num/den in lowest terms with den monic, read as a map P^1 -> P^1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        self.num = num
        self.den = den

    @classmethod
    def reduced(cls, num: UniPoly, den: UniPoly) -> "RationalMap":
        if not den:
            raise InternalError("rational map with zero denominator")
        if not num:
            return cls(num, UniPoly.const(den.ctx, 1))
        g = num.gcd(den)
        num = num.exact_div(g)
        den = den.exact_div(g)
        s = den.lc.inv()
        return cls(num * s, den * s)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self) -> str:
        return f"RationalMap(({self.num}) / ({self.den}))"

    def __call__(self, z):
        if z is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return self.num.ctx.zero
            return self.num.lc / self.den.lc
        d = self.den(z)
        n = self.num(z)
        if d:
            return n / d
        if not n:
            raise InternalError("numerator and denominator vanish together after reduction")
        return INF

    def fixed_point_form(self) -> tuple[UniPoly, int]:
        """Affine part of the binary form X*D - Z*N, and the form's degree (deg + 1).

        Zeros of the form on P^1, with multiplicity, are the fixed points of the
        map; the point at infinity absorbs ``form_degree - affine.degree`` of them.
        """
        z = UniPoly.x(self.num.ctx)
        return z * self.den - self.num, self.degree + 1

    def fixed_point_count(self) -> int:
        """Fixed points on P^1 counted with multiplicity."""
        affine, form_degree = self.fixed_point_form()
        if not affine:
            raise ValueError("identity map: every point is fixed")
        return form_degree

    def fixed_points_simple(self) -> bool:
        """True when every fixed point over the algebraic closure has multiplicity one."""
        affine, form_degree = self.fixed_point_form()
        if form_degree - affine.degree > 1:
            return False
        return affine.gcd(affine.derivative()).degree == 0


# --- the delta values and the A matrix ------------------------------------------------------


def _check_delta_index(p: int, n: int) -> None:
    if not 1 <= n <= p - 1:
        raise IndexOutOfRangeError(f"delta index {n} outside [1, {p - 1}]")


def delta(lam: FieldElement, a: FieldElement, n: int) -> FieldElement:
    """(lam^p (1 - a^p) - (lam^p - a^p) lam^n) / n."""
    ctx = lam.ctx
    p = ctx.p
    _check_delta_index(p, n)
    lp = lam**p
    ap = a**p
    return (lp * (1 - ap) - (lp - ap) * lam**n) * pow(n, p - 2, p)


def delta_bipoly(p: int, n: int) -> BiPoly:
    _check_delta_index(p, n)
    L = BiPoly.lam(p)
    Ap = BiPoly.monomial(p, 0, p)
    Lp = L**p
    return (Lp * (1 - Ap) - (Lp - Ap) * L**n) * pow(n, p - 2, p)


def delta_linear(lam: FieldElement, n: int) -> UniPoly:
    """delta_n with a^p replaced by an indeterminate w, as a polynomial in w."""
    ctx = lam.ctx
    p = ctx.p
    _check_delta_index(p, n)
    inv_n = pow(n, p - 2, p)
    lp = lam**p
    ln = lam**n
    return UniPoly(ctx, [(lp - lp * ln) * inv_n, (ln - lp) * inv_n])


def a_matrix(deltas: Sequence, m: int) -> list[list]:
    """The m x (m+1) matrix with row r (from the top) = delta_{m-r}, ..., delta_{2m-r}.

    ``deltas[n]`` must be defined for 1 <= n <= 2m.
    """
    return [[deltas[m - r + c] for c in range(m + 1)] for r in range(m)]


def a_submatrix(A: list[list], m: int, i: int) -> list[list]:
    """A_i for m+1 <= i <= p = 2m+1: A with its (i-m)-th column (1-indexed) removed."""
    if not m + 1 <= i <= 2 * m + 1:
        raise IndexOutOfRangeError(f"A_i index {i} outside [{m + 1}, {2 * m + 1}]")
    return drop_column(A, i - m - 1)


def _deltas_at(lam: FieldElement, a: FieldElement) -> list:
    p = lam.ctx.p
    return [None] + [delta(lam, a, n) for n in range(1, p)]


def build_A(sm: SelfMapCtx, a: FieldElement) -> list[list[FieldElement]]:
    return a_matrix(_deltas_at(sm.lam, a), sm.m)


def build_A_i(sm: SelfMapCtx, a: FieldElement, i: int) -> list[list[FieldElement]]:
    return a_submatrix(build_A(sm, a), sm.m, i)


def build_A_symbolic(p: int) -> list[list[BiPoly]]:
    m = (p - 1) // 2
    return a_matrix([None] + [delta_bipoly(p, n) for n in range(1, p)], m)


def alpha_from_matrix(A: list[list], m: int, one=1) -> list:
    """alpha_i = (-1)^i det(A_i) for i = m+1..p, in that order."""
    out = []
    for i in range(m + 1, 2 * m + 2):
        d = det(a_submatrix(A, m, i), one)
        out.append(d if i % 2 == 0 else -d)
    return out


def alpha_vector(sm: SelfMapCtx, a: FieldElement) -> list[FieldElement]:
    return alpha_from_matrix(build_A(sm, a), sm.m, sm.ctx.one)


def _end_dets(sm: SelfMapCtx, a: FieldElement) -> tuple[FieldElement, FieldElement]:
    A = build_A(sm, a)
    m = sm.m
    one = sm.ctx.one
    return det(a_submatrix(A, m, m + 1), one), det(a_submatrix(A, m, 2 * m + 1), one)


def selfmap_eval(sm: SelfMapCtx, a):
    """phi(a) for a in P^1.

    The determinant formula is used whenever det A_p(a) != 0; otherwise (and at
    infinity) the reduced rational map decides.
    """
    if a is INF:
        return sm.rational(INF)
    sm.ctx._check(a)
    d_first, d_last = _end_dets(sm, a)
    if not d_last:
        log.info("det A_p vanishes at a=%d (lambda=%d); using the reduced map", a.n, sm.lam.n)
        return sm.rational(a)
    p = sm.p
    r = d_first / d_last
    return a**p / sm.lam ** (p - 1) * r * r


def selfmap_rational(sm: SelfMapCtx) -> RationalMap:
    """z^p f(z^p)^2 / (lam^(p-1) g(z^p)^2) reduced, with f = det A_{m+1}, g = det A_p in w = z^p."""
    ctx, lam, p, m = sm.ctx, sm.lam, sm.p, sm.m
    deltas = [None] + [delta_linear(lam, n) for n in range(1, p)]
    A = a_matrix(deltas, m)
    one = UniPoly.const(ctx, 1)
    f_w = det_ring(a_submatrix(A, m, m + 1), one)
    g_w = det_ring(a_submatrix(A, m, p), one)
    f_z = f_w.compose_power(p)
    g_z = g_w.compose_power(p)
    num = UniPoly.monomial(ctx, p) * f_z * f_z
    den = g_z * g_z * lam ** (p - 1)
    return RationalMap.reduced(num, den)


def grading_polynomial(sm: SelfMapCtx, a: FieldElement) -> UniPoly:
    """(alpha_p^2 / (lam-1)) t - (alpha_{m+1}^2 / (lam-1)) a^p / lam^(p-1)."""
    alpha = alpha_vector(sm, a)
    lam, p = sm.lam, sm.p
    s = (lam - 1).inv()
    lin = alpha[-1] * alpha[-1] * s
    const = alpha[0] * alpha[0] * s * a**p / lam ** (p - 1)
    return UniPoly(sm.ctx, [-const, lin])


def grading_root(P: UniPoly):
    """Root of a degree-1 polynomial, INF for a nonzero constant."""
    if P.degree == 1:
        return -P.coeff(0) / P.coeff(1)
    if P.degree == 0:
        return INF
    raise ValueError("grading polynomial vanishes identically")


# --- hand-expanded forms for small p --------------------------------------------------------


def selfmap_closed_form(p: int, lam: FieldElement) -> RationalMap:
    if p not in (3, 5, 7):
        raise UnsupportedPrimeError(f"closed forms exist for p in {{3, 5, 7}}, not {p}")
    ctx = lam.ctx
    if ctx.p != p:
        raise ValueError(f"lambda lives in characteristic {ctx.p}, not {p}")
    if lam == 0 or lam == 1:
        raise ValueError("lambda must avoid {0, 1}")
    L = lam

    def poly(coeffs: dict[int, FieldElement]) -> UniPoly:
        top = max(coeffs)
        return UniPoly(ctx, [coeffs.get(k, ctx.zero) for k in range(top + 1)])

    if p == 3:
        top = poly({3: ctx.one, 0: L * (L + 1)})
        bot = poly({3: L + 1, 0: L**2})
    elif p == 5:
        h = L**2 - L + 1
        top = poly({10: ctx.one, 5: -L * (L + 1) * h, 0: L**4 * h})
        bot = poly({10: h, 5: -(L**2) * (L + 1) * h, 0: L**6})
    else:
        s = (L + 1) * (L**2 + L + 1)
        t = L**2 + 3 * L + 1
        u = L**2 + 1
        top = poly({21: ctx.one, 14: 2 * L * s * t, 7: L**4 * (L + 1) * s * u, 0: L**9 * s})
        bot = poly({21: s, 14: L**2 * (L + 1) * s * u, 7: 2 * L**6 * s * t, 0: L**12})
    num = UniPoly.monomial(ctx, p) * top * top
    den = bot * bot
    return RationalMap.reduced(num, den)


def is_pure_frobenius(rm: RationalMap, p: int) -> bool:
    """True when the map is z -> z^(p^2)."""
    return rm == RationalMap(UniPoly.monomial(rm.num.ctx, p * p), UniPoly.const(rm.num.ctx, 1))

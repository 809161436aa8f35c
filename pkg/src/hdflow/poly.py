"""Exact polynomials: univariate over a FieldCtx, bivariate (in lambda and a) over F_p."""

from __future__ import annotations

import math
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import BothZeroError, CharMismatchError, CtxMismatchError, ExactDivisionFailed
from .ff import FieldCtx, FieldElement

NEG_INF = -math.inf


class UniPoly:
    """Polynomial over a finite field; ``coeffs[i]`` is the coefficient of x^i.

    Coefficients are kept as raw integer encodings. The zero polynomial has an
    empty coefficient tuple and degree ``-inf``.
    """

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                ctx._check(c)
                raw.append(c.n)
            else:
                raw.append(int(c) % ctx.p)
        self.ctx = ctx
        self.c = _trim(raw)

    @classmethod
    def _raw(cls, ctx: FieldCtx, raw: list[int]) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.c = _trim(raw)
        return obj

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls._raw(ctx, [0, 1])

    @classmethod
    def const(cls, ctx: FieldCtx, v) -> "UniPoly":
        return cls(ctx, [v])

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, v=1) -> "UniPoly":
        return cls(ctx, [0] * k + [v])

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots: Iterable[FieldElement]) -> "UniPoly":
        out = cls.const(ctx, 1)
        for r in roots:
            out = out * cls._raw(ctx, [ctx.neg(r.n), 1])
        return out

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, n) for n in self.c]

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.ctx, self.c[i] if 0 <= i < len(self.c) else 0)

    @property
    def lc(self) -> FieldElement:
        return FieldElement(self.ctx, self.c[-1] if self.c else 0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.ctx == other.ctx and self.c == other.c
        if isinstance(other, (int, FieldElement)):
            return self == UniPoly(self.ctx, [other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            n = self.c[i]
            if not n:
                continue
            if i == 0:
                terms.append(f"[{n}]")
            elif i == 1:
                terms.append(f"[{n}]x" if n != 1 else "x")
            else:
                terms.append(f"[{n}]x^{i}" if n != 1 else f"x^{i}")
        return " + ".join(terms)

    def _other(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatchError(f"{other.ctx} vs {self.ctx}")
            return other
        if isinstance(other, (int, FieldElement)):
            return UniPoly(self.ctx, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = ctx.add(out[i], y)
        return UniPoly._raw(ctx, out)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return UniPoly._raw(ctx, [ctx.neg(x) for x in self.c])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            self.ctx._check(other)
            ctx = self.ctx
            return UniPoly._raw(ctx, [ctx.mul(x, other.n) for x in self.c])
        if isinstance(other, int):
            ctx = self.ctx
            return UniPoly._raw(ctx, [ctx.smul(other, x) for x in self.c])
        other = self._other(other)
        if other is NotImplemented:
            return other
        return UniPoly._raw(self.ctx, _mul_raw(self.ctx, self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._other(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.c)
        db = len(other.c) - 1
        if len(rem) - 1 < db:
            return UniPoly._raw(ctx, []), UniPoly._raw(ctx, rem)
        inv_lead = ctx.inv(other.c[-1])
        quot = [0] * (len(rem) - db)
        bc = other.c
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = ctx.mul(c, inv_lead)
            quot[k - db] = c
            base = k - db
            for i in range(db + 1):
                if bc[i]:
                    rem[base + i] = ctx.sub(rem[base + i], ctx.mul(c, bc[i]))
        return UniPoly._raw(ctx, quot), UniPoly._raw(ctx, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ExactDivisionFailed(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "UniPoly":
        if not self.c:
            return self
        return self * FieldElement(self.ctx, self.ctx.inv(self.c[-1]))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        return upoly_gcd(self, other)

    def __call__(self, x: FieldElement) -> FieldElement:
        ctx = self.ctx
        ctx._check(x)
        acc = 0
        xn = x.n
        for c in reversed(self.c):
            acc = ctx.add(ctx.mul(acc, xn), c)
        return FieldElement(ctx, acc)

    eval = __call__

    def compose_power(self, k: int) -> "UniPoly":
        """P(x^k)."""
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * k + 1)
        for i, c in enumerate(self.c):
            out[i * k] = c
        return UniPoly._raw(self.ctx, out)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly(self.ctx, [fn(c) for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly._raw(ctx, [ctx.smul(i, c) for i, c in enumerate(self.c)][1:])

    def powmod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.const(self.ctx, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def roots(self) -> list[FieldElement]:
        """Distinct roots in the coefficient field, sorted by encoding."""
        if not self.c:
            raise ValueError("every element is a root of the zero polynomial")
        if len(self.c) == 1:
            return []
        ctx = self.ctx
        P = self.monic()
        X = UniPoly.x(ctx)
        g = upoly_gcd(P, X.powmod(ctx.q, P) - X)
        roots = _split_linear(g)
        return sorted(roots, key=lambda r: r.n)


def _split_linear(g: UniPoly) -> list[FieldElement]:
    """Roots of a monic squarefree product of distinct linear factors."""
    ctx = g.ctx
    if g.degree < 1:
        return []
    if g.degree == 1:
        return [FieldElement(ctx, ctx.neg(g.c[0]))]
    X = UniPoly.x(ctx)
    half = (ctx.q - 1) // 2
    for delta in range(ctx.q):
        shifted = X + FieldElement(ctx, delta)
        h = upoly_gcd(g, shifted.powmod(half, g) - 1)
        if 0 < h.degree < g.degree:
            return _split_linear(h) + _split_linear(g.exact_div(h).monic())
    raise AssertionError("equal-degree split did not terminate")


def _trim(raw: list[int]) -> tuple[int, ...]:
    n = len(raw)
    while n and raw[n - 1] == 0:
        n -= 1
    return tuple(raw[:n])


def _mul_raw(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    p = ctx.p
    if ctx.f == 1:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [v % p for v in out]
    out = [0] * (len(a) + len(b) - 1)
    mul, add = ctx.mul, ctx.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return out


def upoly_arith(op: str, P: UniPoly, Q: UniPoly):
    if op == "add":
        return P + Q
    if op == "sub":
        return P - Q
    if op == "mul":
        return P * Q
    if op == "divmod":
        return divmod(P, Q)
    raise ValueError(f"unknown op {op!r}")


def upoly_gcd(P: UniPoly, Q: UniPoly) -> UniPoly:
    """Monic gcd by Euclid."""
    if not P and not Q:
        raise BothZeroError("gcd(0, 0) is undefined")
    if P.ctx != Q.ctx:
        raise CtxMismatchError(f"{P.ctx} vs {Q.ctx}")
    a, b = P, Q
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_eval(P: UniPoly, x: FieldElement) -> FieldElement:
    return P(x)


# --- bivariate polynomials over F_p ---------------------------------------------------------


def _conv2(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact 2-D convolution mod p via Kronecker substitution into Python integers."""
    r1, c1 = A.shape
    r2, c2 = B.shape
    R, C = r1 + r2 - 1, c1 + c2 - 1
    bound = min(A.size, B.size) * (p - 1) ** 2
    if bound < 1 << 32:
        dtype, width = np.dtype("<u4"), 4
    else:
        dtype, width = np.dtype("<u8"), 8
    Ap = np.zeros((r1, C), dtype=dtype)
    Ap[:, :c1] = A
    Bp = np.zeros((r2, C), dtype=dtype)
    Bp[:, :c2] = B
    ia = int.from_bytes(Ap.tobytes(), "little")
    ib = int.from_bytes(Bp.tobytes(), "little")
    n = R * C
    prod = (ia * ib).to_bytes(n * width, "little")
    out = np.frombuffer(prod, dtype=dtype) % p
    return out.astype(np.int64).reshape(R, C)


def _udiv_exact(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact division of univariate integer-coefficient lists over F_p."""
    a = [int(x) % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    if not a:
        return []
    if len(a) - 1 < db:
        raise ExactDivisionFailed("row division left a remainder")
    inv = pow(int(b[-1]), p - 2, p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * int(b[i])) % p
    if any(a[:db]):
        raise ExactDivisionFailed("row division left a remainder")
    return q


class BiPoly:
    """Polynomial in two variables (lambda, a) over F_p, stored as a dense grid.

    ``grid[i, j]`` is the coefficient of lambda^i * a^(j*step).  The step is the
    gcd of the a-exponents that occur, so polynomials in a^p (every entry of the
    A and B matrices) are stored p times narrower.
    """

    __slots__ = ("p", "grid", "step")

    def __init__(self, p: int, grid, step: int = 1):
        self.p = int(p)
        g = np.asarray(grid, dtype=np.int64) % self.p
        if g.ndim != 2:
            raise ValueError("grid must be 2-dimensional")
        self.grid, self.step = _normalize(g, int(step))

    @classmethod
    def _wrap(cls, p: int, grid: np.ndarray, step: int) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.p = p
        obj.grid, obj.step = _normalize(grid, step)
        return obj

    @classmethod
    def zero(cls, p: int) -> "BiPoly":
        return cls._wrap(p, np.zeros((0, 0), dtype=np.int64), 1)

    @classmethod
    def const(cls, p: int, c: int) -> "BiPoly":
        return cls._wrap(p, np.array([[c % p]], dtype=np.int64), 1)

    @classmethod
    def monomial(cls, p: int, i: int, j: int, c: int = 1) -> "BiPoly":
        if j == 0:
            g = np.zeros((i + 1, 1), dtype=np.int64)
            g[i, 0] = c % p
            return cls._wrap(p, g, 1)
        g = np.zeros((i + 1, 2), dtype=np.int64)
        g[i, 1] = c % p
        return cls._wrap(p, g, j)

    @classmethod
    def lam(cls, p: int) -> "BiPoly":
        return cls.monomial(p, 1, 0)

    @classmethod
    def a(cls, p: int) -> "BiPoly":
        return cls.monomial(p, 0, 1)

    @classmethod
    def from_dict(cls, p: int, terms: dict[tuple[int, int], int]) -> "BiPoly":
        out = cls.zero(p)
        for (i, j), c in terms.items():
            out = out + cls.monomial(p, i, j, c)
        return out

    def to_dict(self) -> dict[tuple[int, int], int]:
        rows, cols = np.nonzero(self.grid)
        return {(int(i), int(j) * self.step): int(self.grid[i, j]) for i, j in zip(rows, cols)}

    @property
    def degree_lam(self):
        return self.grid.shape[0] - 1 if self.grid.size else NEG_INF

    @property
    def degree_a(self):
        return (self.grid.shape[1] - 1) * self.step if self.grid.size else NEG_INF

    @property
    def total_degree(self):
        if not self.grid.size:
            return NEG_INF
        return max(i + j for (i, j) in self.to_dict())

    def __bool__(self) -> bool:
        return bool(self.grid.size)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiPoly.const(self.p, other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return (
            self.p == other.p
            and self.step == other.step
            and self.grid.shape == other.grid.shape
            and bool(np.array_equal(self.grid, other.grid))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.step, self.grid.shape, self.grid.tobytes()))

    def __repr__(self) -> str:
        terms = sorted(self.to_dict().items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
        if not terms:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in terms:
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("lam" if i == 1 else f"lam^{i}"),
                    "" if j == 0 else ("a" if j == 1 else f"a^{j}"),
                ) if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return f"BiPoly(p={self.p}: " + " + ".join(parts) + ")"

    def _other(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.p != self.p:
                raise CharMismatchError(f"F_{other.p} vs F_{self.p}")
            return other
        if isinstance(other, int):
            return BiPoly.const(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        A, B, s = _align(self, other)
        R = max(A.shape[0], B.shape[0])
        C = max(A.shape[1], B.shape[1])
        out = np.zeros((R, C), dtype=np.int64)
        out[: A.shape[0], : A.shape[1]] += A
        out[: B.shape[0], : B.shape[1]] += B
        return BiPoly._wrap(self.p, out % self.p, s)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._wrap(self.p, (-self.grid) % self.p, self.step)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly._wrap(self.p, (self.grid * (other % self.p)) % self.p, self.step)
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return BiPoly.zero(self.p)
        A, B, s = _align(self, other)
        return BiPoly._wrap(self.p, _conv2(A, B, self.p), s)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly.const(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Quotient of an exact division; raises ExactDivisionFailed otherwise.

        Works lambda-row by lambda-row: the top row of the dividend must be the
        top row of the divisor times the top row of the quotient.
        """
        other = self._other(other)
        if not other:
            raise ZeroDivisionError("BiPoly division by zero")
        if not self:
            return BiPoly.zero(self.p)
        p = self.p
        A, B, s = _align(self, other)
        ra, rb = A.shape[0] - 1, B.shape[0] - 1
        if ra < rb:
            raise ExactDivisionFailed("dividend has lower lambda-degree than divisor")
        btop = [int(v) for v in B[rb]]
        while btop and btop[-1] == 0:
            btop.pop()
        width = A.shape[1] + B.shape[1]
        R = np.zeros((ra + 1, width), dtype=np.int64)
        R[:, : A.shape[1]] = A
        Q = np.zeros((ra - rb + 1, width), dtype=np.int64)
        for k in range(ra, rb - 1, -1):
            row = R[k]
            if not row.any():
                continue
            qk = _udiv_exact(list(row), btop, p)
            Q[k - rb, : len(qk)] = qk
            sub = _conv2(B, np.array([qk], dtype=np.int64), p)
            block = R[k - rb : k + 1, : sub.shape[1]]
            R[k - rb : k + 1, : sub.shape[1]] = (block - sub) % p
        if R.any():
            raise ExactDivisionFailed("bivariate division left a remainder")
        return BiPoly._wrap(p, Q, s)

    def __call__(self, lam: FieldElement, a: FieldElement) -> FieldElement:
        return self.eval(lam, a)

    def eval(self, lam: FieldElement, a: FieldElement) -> FieldElement:
        ctx = lam.ctx
        if ctx.p != self.p:
            raise CharMismatchError(f"evaluation in characteristic {ctx.p}, polynomial over F_{self.p}")
        ctx._check(a)
        if not self:
            return ctx.zero
        na = self.grid.shape[1]
        astep = ctx.pow(a.n, self.step)
        apows = [1]
        for _ in range(na - 1):
            apows.append(ctx.mul(apows[-1], astep))
        acc = 0
        for row in self.grid[::-1]:
            rv = 0
            for j in np.flatnonzero(row):
                rv = ctx.add(rv, ctx.smul(int(row[j]), apows[j]))
            acc = ctx.add(ctx.mul(acc, lam.n), rv)
        return FieldElement(ctx, acc)


def _normalize(g: np.ndarray, step: int) -> tuple[np.ndarray, int]:
    if not g.any():
        return np.zeros((0, 0), dtype=np.int64), 1
    rows = np.flatnonzero(g.any(axis=1))
    cols = np.flatnonzero(g.any(axis=0))
    g = g[: rows[-1] + 1, : cols[-1] + 1]
    if len(cols) == 1 and cols[0] == 0:
        return np.ascontiguousarray(g), 1
    k = 0
    for c in cols:
        k = gcd(k, int(c))
    if k > 1:
        g = g[:, ::k]
        step *= k
    return np.ascontiguousarray(g), step


def _expand(g: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1 or g.shape[1] <= 1:
        return g
    out = np.zeros((g.shape[0], (g.shape[1] - 1) * factor + 1), dtype=np.int64)
    out[:, ::factor] = g
    return out


def _align(x: BiPoly, y: BiPoly) -> tuple[np.ndarray, np.ndarray, int]:
    sx = x.step if x.grid.shape[1] > 1 else 0
    sy = y.step if y.grid.shape[1] > 1 else 0
    s = gcd(sx, sy) or 1
    return _expand(x.grid, sx // s if sx else 1), _expand(y.grid, sy // s if sy else 1), s


def bipoly_eval(P: BiPoly, lam: FieldElement, a: FieldElement) -> FieldElement:
    return P.eval(lam, a)


def bipoly_arith(op: str, P: BiPoly, Q: BiPoly) -> BiPoly:
    if op == "add":
        return P + Q
    if op == "sub":
        return P - Q
    if op == "mul":
        return P * Q
    raise ValueError(f"unknown op {op!r}")

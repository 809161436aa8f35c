"""Finite fields F_q, q = p**f, with elements addressed by their base-p integer encoding.

An element a_0 + a_1*x + ... + a_{f-1}*x^{f-1} of F_p[x]/(M) is encoded as the
integer a_0 + a_1*p + ... + a_{f-1}*p^{f-1}.  For the ``paper-f81`` preset
(M = x^4 + x^2 + 2 over F_3) the integer 65 therefore stands for 2x^3 + x^2 + 2.

All arithmetic is available at two levels: on raw encodings through the
``FieldCtx`` methods (used in hot loops), and on ``FieldElement`` wrappers that
overload the usual operators.
"""

from __future__ import annotations

from random import Random
from typing import Iterator, Sequence

from .errors import (
    CtxMismatchError,
    NotIrreducibleError,
    NotMonicError,
    NotPrimeError,
    OutOfRangeError,
)

# Fields up to this size get discrete log/exp tables (mul, inv, pow, sqrt in O(1)).
TABLE_LIMIT = 1 << 17

PRESETS = {
    "paper-f81": (3, 4, (2, 0, 1, 0, 1)),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over F_p as little-endian int lists (modulus handling only) ---

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _ptrim(out)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test: M of degree f is irreducible iff x^(p^f) = x mod M and
    gcd(x^(p^(f/r)) - x, M) = 1 for every prime r dividing f."""
    m = _ptrim([int(c) % p for c in modulus])
    f = len(m) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    x = [0, 1]

    def frob_iter(k: int) -> list[int]:
        acc = x
        for _ in range(k):
            acc = _ppowmod(acc, p, m, p)
        return acc

    if _psub(frob_iter(f), x, p):
        return False
    for r in prime_factors(f):
        g = _pgcd(m, _psub(frob_iter(f // r), x, p), p)
        if len(g) > 1:
            return False
    return True


def first_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree f (by integer encoding of c_0..c_{f-1})."""
    if f == 1:
        return (0, 1)
    for n in range(p**f):
        low = [(n // p**i) % p for i in range(f)]
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise NotIrreducibleError(f"no irreducible polynomial of degree {f} over F_{p}")  # unreachable


class _Infinity:
    """The point at infinity: of P^1, and (by the same token) of an elliptic curve."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class FieldCtx:
    """The field F_p[x]/(modulus).

    ``modulus`` is the little-endian coefficient sequence c_0..c_f of a monic
    irreducible polynomial; it is checked at construction.
    """

    def __init__(self, p: int, f: int = 1, modulus: Sequence[int] | None = None):
        p, f = int(p), int(f)
        if p < 3 or not is_prime(p):
            raise NotPrimeError(f"p must be an odd prime, got {p}")
        if f < 1:
            raise ValueError(f"extension degree must be >= 1, got {f}")
        if modulus is None:
            modulus = first_irreducible(p, f)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != f + 1:
            raise ValueError(f"modulus must have {f + 1} coefficients, got {len(modulus)}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if modulus[-1] != 1:
            raise NotMonicError("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise NotIrreducibleError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.f = f
        self.modulus = modulus
        self.q = p**f
        self._pw = [p**i for i in range(f)]
        # x^f = sum(_red[i] * x^i)
        self._red = [(-c) % p for c in modulus[:-1]]
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self._tables_tried = False
        self._qext: Embedding | None = None

    @classmethod
    def preset(cls, name: str) -> "FieldCtx":
        try:
            p, f, mod = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None
        return cls(p, f, mod)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, f={self.f}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __getstate__(self):
        # tables are rebuilt lazily on the other side
        return {"p": self.p, "f": self.f, "modulus": self.modulus}

    def __setstate__(self, state):
        self.__init__(state["p"], state["f"], state["modulus"])

    # --- encodings ---

    def digits(self, n: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.f):
            n, d = divmod(n, p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        p = self.p
        n = 0
        for d in reversed(ds):
            n = n * p + d % p
        return n

    def __call__(self, n: int) -> "FieldElement":
        return self.encode(n)

    def encode(self, n: int) -> "FieldElement":
        n = int(n)
        if not 0 <= n < self.q:
            raise OutOfRangeError(f"encoding {n} outside [0, {self.q})")
        return FieldElement(self, n)

    def decode(self, x: "FieldElement") -> int:
        self._check(x)
        return x.n

    def const(self, k: int) -> "FieldElement":
        """Image of the integer k under Z -> F_p -> F_q."""
        return FieldElement(self, int(k) % self.p)

    def from_poly(self, coeffs: Sequence[int]) -> "FieldElement":
        """Element sum(coeffs[i] * x^i), reduced modulo the modulus."""
        m = list(self.modulus)
        r = _pmod(list(coeffs), m, self.p)
        return FieldElement(self, self.from_digits(r + [0] * (self.f - len(r))))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x (for f = 1, the root of the linear modulus)."""
        if self.f == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> Iterator["FieldElement"]:
        for n in range(self.q):
            yield FieldElement(self, n)

    def random(self, rng: Random) -> "FieldElement":
        return FieldElement(self, rng.randrange(self.q))

    def _check(self, x: "FieldElement") -> None:
        if x.ctx is not self and x.ctx != self:
            raise CtxMismatchError(f"element of {x.ctx} used in {self}")

    # --- raw arithmetic on encodings ---

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.f == 1:
            return (x + y) % p
        out, pw = 0, 1
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += ((dx + dy) % p) * pw
            pw *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.f == 1:
            return (-x) % p
        out, pw = 0, 1
        while x:
            x, d = divmod(x, p)
            out += ((-d) % p) * pw
            pw *= p
        return out

    def sub(self, x: int, y: int) -> int:
        p = self.p
        if self.f == 1:
            return (x - y) % p
        out, pw = 0, 1
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += ((dx - dy) % p) * pw
            pw *= p
        return out

    def smul(self, k: int, x: int) -> int:
        """Multiply by the prime-field scalar k."""
        p = self.p
        k %= p
        if self.f == 1:
            return k * x % p
        if k == 0 or x == 0:
            return 0
        out, pw = 0, 1
        while x:
            x, d = divmod(x, p)
            out += (k * d % p) * pw
            pw *= p
        return out

    def _slow_mul(self, x: int, y: int) -> int:
        p, f = self.p, self.f
        a = self.digits(x)
        b = self.digits(y)
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        red = self._red
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k] % p
            if c:
                base = k - f
                for i, r in enumerate(red):
                    prod[base + i] += c * r
        return self.from_digits([c % p for c in prod[:f]])

    def _ensure_tables(self) -> bool:
        if self._log is not None:
            return True
        if self._tables_tried or self.q > TABLE_LIMIT or self.f == 1:
            self._tables_tried = True
            return False
        self._tables_tried = True
        q = self.q
        order_factors = prime_factors(q - 1)
        g = None
        for cand in range(2, q):
            if all(self._slow_pow(cand, (q - 1) // r) != 1 for r in order_factors):
                g = cand
                break
        assert g is not None
        exp = [0] * (q - 1)
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._slow_mul(acc, g)
        self._exp, self._log = exp, log
        return True

    def _slow_pow(self, x: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._slow_mul(result, x)
            x = self._slow_mul(x, x)
            n >>= 1
        return result

    def mul(self, x: int, y: int) -> int:
        if self.f == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        if self._log is not None or self._ensure_tables():
            log = self._log
            return self._exp[(log[x] + log[y]) % (self.q - 1)]
        return self._slow_mul(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.f == 1:
            return pow(x, self.p - 2, self.p)
        if self._log is not None or self._ensure_tables():
            return self._exp[(-self._log[x]) % (self.q - 1)]
        return self._slow_pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        if n == 0:
            return 1
        if x == 0:
            return 0
        if self.f == 1:
            return pow(x, n, self.p)
        if self._log is not None or self._ensure_tables():
            return self._exp[self._log[x] * n % (self.q - 1)]
        return self._slow_pow(x, n)

    def is_square(self, x: int) -> bool:
        if x == 0:
            return True
        if self._log is not None or self._ensure_tables():
            return self._log[x] % 2 == 0
        return self.pow(x, (self.q - 1) // 2) == 1

    def sqrt_raw(self, x: int) -> tuple[int, ...] | None:
        """Both square roots of x (smaller encoding first), (0,) for x = 0, None for non-squares."""
        if x == 0:
            return (0,)
        if not self.is_square(x):
            return None
        if self._log is not None:
            r = self._exp[self._log[x] // 2]
        else:
            r = self._tonelli_shanks(x)
        s = self.neg(r)
        return (r, s) if r < s else (s, r)

    def _tonelli_shanks(self, x: int) -> int:
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = next(n for n in range(2, q) if not self.is_square(n))
        c = self.pow(z, t)
        r = self.pow(x, (t + 1) // 2)
        u = self.pow(x, t)
        while u != 1:
            i, uu = 0, u
            while uu != 1:
                uu = self.mul(uu, uu)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            r = self.mul(r, b)
            c = self.mul(b, b)
            u = self.mul(u, c)
            s = i
        return r

    # --- element-level conveniences ---

    def sqrt(self, x: "FieldElement") -> tuple["FieldElement", ...] | None:
        self._check(x)
        roots = self.sqrt_raw(x.n)
        if roots is None:
            return None
        return tuple(FieldElement(self, r) for r in roots)

    def in_prime_field(self, x: "FieldElement") -> bool:
        return x.n < self.p

    def quadratic_extension(self) -> tuple["FieldCtx", "Embedding"]:
        """F_{q^2} as F_p[x]/(M2) with M2 the first irreducible of degree 2f, plus an embedding."""
        if self._qext is None:
            big = FieldCtx(self.p, 2 * self.f)
            self._qext = Embedding(self, big, _root_of_modulus(self, big))
        return self._qext.big, self._qext


class Embedding:
    """Field homomorphism small -> big sending x to a fixed root of small's modulus."""

    def __init__(self, small: FieldCtx, big: FieldCtx, root: int):
        self.small = small
        self.big = big
        self.root = root
        powers = [1]
        for _ in range(small.f - 1):
            powers.append(big.mul(powers[-1], root))
        self._powers = powers
        self._cache: dict[int, int] = {}
        self._back: dict[int, int] | None = None

    def raw(self, n: int) -> int:
        hit = self._cache.get(n)
        if hit is not None:
            return hit
        big = self.big
        acc = 0
        for d, pw in zip(self.small.digits(n), self._powers):
            if d:
                acc = big.add(acc, big.smul(d, pw))
        self._cache[n] = acc
        return acc

    def __call__(self, x):
        if x is INF:
            return INF
        self.small._check(x)
        return FieldElement(self.big, self.raw(x.n))

    def preimage(self, y: "FieldElement") -> "FieldElement | None":
        """Inverse image of y, or None when y is outside the subfield."""
        if self._back is None:
            self._back = {self.raw(n): n for n in range(self.small.q)}
        n = self._back.get(y.n)
        return None if n is None else FieldElement(self.small, n)


def _root_of_modulus(small: FieldCtx, big: FieldCtx) -> int:
    from .poly import UniPoly

    poly = UniPoly(big, [big.const(c) for c in small.modulus])
    roots = poly.roots()
    return min(r.n for r in roots)


class FieldElement:
    """Element of a ``FieldCtx``, stored as its integer encoding ``n``."""

    __slots__ = ("ctx", "n")

    def __init__(self, ctx: FieldCtx, n: int):
        self.ctx = ctx
        self.n = n

    @property
    def digits(self) -> list[int]:
        return self.ctx.digits(self.n)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatchError(f"{other.ctx} vs {self.ctx}")
            return other.n
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.n, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.n, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.n))

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.ctx, self.ctx.smul(other, self.n))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.n, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.n, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.n))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.n))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.n, n))

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.n))

    def exact_div(self, other) -> "FieldElement":
        return self / other

    def sqrt(self):
        return self.ctx.sqrt(self)

    def __bool__(self) -> bool:
        return self.n != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.n == other.n and (other.ctx is self.ctx or other.ctx == self.ctx)
        if isinstance(other, int):
            return self.n == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.n)

    def __int__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"F{self.ctx.q}({self.n})"


# functional aliases mirroring the operation names used in the docs

def ff_make(p: int, f: int, modulus: Sequence[int]) -> FieldCtx:
    return FieldCtx(p, f, modulus)


def ff_pow(x: FieldElement, n: int) -> FieldElement:
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return x**n


def ff_encode(ctx: FieldCtx, n: int) -> FieldElement:
    return ctx.encode(n)


def ff_decode(ctx: FieldCtx, x: FieldElement) -> int:
    return ctx.decode(x)


def ff_sqrt(ctx: FieldCtx, x: FieldElement):
    return ctx.sqrt(x)


def node_name(pt) -> str:
    """Decimal encoding of a finite point, or 'inf'."""
    return "inf" if pt is INF else str(pt.n)


def parse_node(ctx: FieldCtx, token: str):
    token = token.strip()
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    return ctx.encode(int(token))


__all__ = [
    "FieldCtx",
    "FieldElement",
    "Embedding",
    "INF",
    "PRESETS",
    "ff_make",
    "ff_pow",
    "ff_encode",
    "ff_decode",
    "ff_sqrt",
    "node_name",
    "parse_node",
    "is_prime",
    "is_irreducible",
    "first_irreducible",
    "prime_factors",
]

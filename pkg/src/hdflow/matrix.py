"""Exact determinants and signed-minor kernel vectors.

Matrices are plain lists of rows. Entries are any exact ring elements supporting
``+ - *`` and truthiness; field entries also need ``/``, ring entries
``exact_div``.
"""

from __future__ import annotations

from itertools import permutations
from typing import Any, Sequence

from .errors import NotSquareError, ShapeMismatchError
from .ff import FieldElement

RingMatrix = list[list[Any]]


def shape(M: Sequence[Sequence[Any]]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ShapeMismatchError("ragged matrix")
    return rows, cols


def _require_square(M) -> int:
    r, c = shape(M)
    if r != c:
        raise NotSquareError(f"{r}x{c} matrix has no determinant")
    return r


def det_field(M: Sequence[Sequence[FieldElement]], one=1):
    """Gaussian elimination over a field. The 0x0 determinant is ``one``."""
    n = _require_square(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    det = None
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return A[0][0] * 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        pk = A[k][k]
        det = pk if det is None else det * pk
        inv = 1 / pk
        rowk = A[k]
        for i in range(k + 1, n):
            if A[i][k]:
                factor = A[i][k] * inv
                rowi = A[i]
                for j in range(k + 1, n):
                    if rowk[j]:
                        rowi[j] = rowi[j] - factor * rowk[j]
    return det if sign == 1 else -det


def det_ring(M: Sequence[Sequence[Any]], one=1):
    """Fraction-free (Bareiss) determinant over an integral domain."""
    n = _require_square(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return A[0][0] * 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi = A[i]
            rowk = A[k]
            for j in range(k + 1, n):
                val = rowi[j] * akk - aik * rowk[j]
                rowi[j] = val if prev is None else val.exact_div(prev)
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def det_expand(M: Sequence[Sequence[Any]], one=1):
    """Leibniz expansion; intended as an independent cross-check for n <= 4."""
    n = _require_square(M)
    if n == 0:
        return one
    total = None
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = M[0][perm[0]]
        for i in range(1, n):
            term = term * M[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def det(M: Sequence[Sequence[Any]], one=1):
    """Dispatch on entry type: elimination for field entries, Bareiss otherwise."""
    n = _require_square(M)
    if n and isinstance(M[0][0], FieldElement):
        return det_field(M, one)
    return det_ring(M, one)


def drop_column(M: Sequence[Sequence[Any]], j: int) -> RingMatrix:
    return [list(row[:j]) + list(row[j + 1 :]) for row in M]


def kernel_cofactors(M: Sequence[Sequence[Any]], one=1) -> list[Any]:
    """v_i = (-1)^i det(M without column i), columns 0-indexed; M v = 0 identically."""
    r, c = shape(M)
    if c != r + 1:
        raise ShapeMismatchError(f"kernel_cofactors needs an r x (r+1) matrix, got {r}x{c}")
    out = []
    for i in range(c):
        d = det(drop_column(M, i), one)
        out.append(d if i % 2 == 0 else -d)
    return out


def mat_vec(M: Sequence[Sequence[Any]], v: Sequence[Any]) -> list[Any]:
    r, c = shape(M)
    if len(v) != c:
        raise ShapeMismatchError(f"{r}x{c} matrix times length-{len(v)} vector")
    out = []
    for row in M:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return out


def transpose(M: Sequence[Sequence[Any]]) -> RingMatrix:
    return [list(col) for col in zip(*M)]


def map_entries(M: Sequence[Sequence[Any]], fn) -> RingMatrix:
    return [[fn(x) for x in row] for row in M]

"""Exact integer linear algebra on small dense matrices.

Matrices are tuples of row tuples and vectors are tuples, so both are
immutable and hashable. Every routine works on Python ints; nothing in
this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, SingularMatrix

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if not m or any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("matrix rows must be non-empty and of equal length")
    return m


def as_square(rows: Iterable[Iterable[int]]) -> Matrix:
    m = as_matrix(rows)
    if len(m) != len(m[0]):
        raise DimensionMismatch(f"expected a square matrix, got {len(m)}x{len(m[0])}")
    return m


def as_vector(v: Iterable[int]) -> Vector:
    return tuple(int(x) for x in v)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def diag(*entries: int) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    if len(m[0]) != len(v):
        raise DimensionMismatch(f"cannot apply {len(m)}x{len(m[0])} matrix to length-{len(v)} vector")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Sequence[int]) -> Vector:
    return tuple(-x for x in a)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def adjugate(m: Sequence[Sequence[int]]) -> Matrix:
    """Adjugate (transposed cofactor matrix), so that ``m @ adj == det(m) * I``."""
    n = len(m)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(tuple, m)) if k != i]
            cof[i][j] = (-1) ** (i + j) * det(minor)
    return transpose(cof)


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(det(m)) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class HnfResult:
    hnf: Matrix
    transform: Matrix


@dataclass(frozen=True)
class SnfResult:
    snf: Matrix
    left: Matrix
    right: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.snf[i][i] for i in range(min(len(self.snf), len(self.snf[0]))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _col_combine(h, u, i, j, x, y, p, q):
    # (col_i, col_j) <- (x*col_i + y*col_j, p*col_i + q*col_j)
    for mat in (h, u):
        for row in mat:
            ci, cj = row[i], row[j]
            row[i] = x * ci + y * cj
            row[j] = p * ci + q * cj


def hnf(m: Sequence[Sequence[int]]) -> HnfResult:
    """Column-style Hermite normal form of a non-singular square matrix.

    Returns ``H`` lower triangular with positive diagonal and
    ``0 <= H[i][j] < H[i][i]`` for ``j < i``, and unimodular ``U`` with
    ``m @ U == H``. ``H`` depends only on the lattice spanned by the
    columns of ``m``.
    """
    m = as_square(m)
    n = len(m)
    h = [list(row) for row in m]
    u = [list(row) for row in identity(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = h[i][j]
            if b == 0:
                continue
            a = h[i][i]
            g, x, y = xgcd(a, b)
            _col_combine(h, u, i, j, x, y, -b // g, a // g)
        if h[i][i] == 0:
            raise SingularMatrix("hnf requires a non-singular matrix")
        if h[i][i] < 0:
            for mat in (h, u):
                for row in mat:
                    row[i] = -row[i]
        piv = h[i][i]
        for j in range(i):
            q = h[i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[i]
    return HnfResult(hnf=as_matrix(h), transform=as_matrix(u))


def snf(m: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form ``left @ m @ right == snf`` of any integer matrix.

    Diagonal entries are non-negative and each divides the next; zero
    entries (rank deficiency) come last.
    """
    a = [list(row) for row in as_matrix(m)]
    rows, cols = len(a), len(a[0])
    left = [list(r) for r in identity(rows)]
    right = [list(r) for r in identity(cols)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        left[i], left[k] = left[k], left[i]

    def swap_cols(j, k):
        for mat in (a, right):
            for row in mat:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        if q:
            for mat in (a, left):
                s = mat[src]
                d = mat[dst]
                for c in range(len(d)):
                    d[c] += q * s[c]

    def add_col(dst, src, q):
        if q:
            for mat in (a, right):
                for row in mat:
                    row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                add_col(j, t, -(a[t][j] // p))
            line = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            line += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if line:
                # a strictly smaller remainder exists; make it the pivot
                _, i, j = min(line)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            for mat in (a, left):
                mat[t] = [-x for x in mat[t]]
    return SnfResult(snf=as_matrix(a), left=as_matrix(left), right=as_matrix(right))


def integer_kernel(m: Sequence[Sequence[int]]) -> list[Vector]:
    """Basis of ``{z in Z^n : m @ z == 0}`` for a (possibly rectangular) matrix."""
    s = snf(m)
    r = s.rank
    cols = len(s.right)
    return [tuple(s.right[i][j] for i in range(cols)) for j in range(r, cols)]


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vector]:
    """One integer solution of ``m @ x == b``, or ``None`` if there is none."""
    s = snf(m)
    lb = matvec(s.left, b)
    cols = len(s.right)
    y = [0] * cols
    for i, bi in enumerate(lb):
        d = s.snf[i][i] if i < cols else 0
        if d == 0:
            if bi != 0:
                return None
            continue
        q, r = divmod(bi, d)
        if r:
            return None
        y[i] = q
    return matvec(s.right, y)

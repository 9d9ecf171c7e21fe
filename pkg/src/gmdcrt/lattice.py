"""Integer lattices LAT(M), fundamental parallelepipeds N(M) and vector remainders."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import DimensionMismatch, SingularMatrix
from .exactint import (
    Matrix,
    Vector,
    adjugate,
    as_square,
    as_vector,
    det,
    hnf,
    integer_kernel,
    matmul,
    matvec,
    snf,
    vsub,
)


@lru_cache(maxsize=4096)
def _inverse_data(m: Matrix) -> tuple[Matrix, int]:
    d = det(m)
    if d == 0:
        raise SingularMatrix(f"matrix {m} is singular")
    return adjugate(m), d


def _check_dim(m: Matrix, v: Sequence[int]) -> None:
    if len(v) != len(m):
        raise DimensionMismatch(f"vector of length {len(v)} used with {len(m)}x{len(m)} matrix")


@dataclass(frozen=True)
class Lattice:
    """LAT(basis) with the basis kept in column-style HNF.

    Two ``Lattice`` objects compare equal exactly when they contain the
    same points.
    """

    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def volume(self) -> int:
        return det(self.basis)


def lattice_of(m: Iterable[Iterable[int]]) -> Lattice:
    return Lattice(hnf(as_square(m)).hnf)


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch("lattices of different dimension")
    return a.basis == b.basis


def _in_lattice(m: Matrix, v: Sequence[int]) -> bool:
    adj, d = _inverse_data(m)
    return all(x % d == 0 for x in matvec(adj, v))


def contains(l: Lattice, v: Sequence[int]) -> bool:
    _check_dim(l.basis, v)
    return _in_lattice(l.basis, v)


def intersect(a: Lattice, b: Lattice) -> Lattice:
    """LAT(A) ∩ LAT(B) from the integer kernel of the block ``[A | -B]``."""
    if a.dim != b.dim:
        raise DimensionMismatch("lattices of different dimension")
    n = a.dim
    block = [list(ra) + [-x for x in rb] for ra, rb in zip(a.basis, b.basis)]
    ker = integer_kernel(block)
    x_parts = [z[:n] for z in ker]
    x = tuple(zip(*x_parts))
    return Lattice(hnf(matmul(a.basis, x)).hnf)


def lcrm(moduli: Sequence[Iterable[Iterable[int]]]) -> Matrix:
    """Canonical least common right multiple: the HNF basis of ⋂ LAT(M_j)."""
    if not moduli:
        raise ValueError("lcrm of an empty list")
    lats = [lattice_of(m) for m in moduli]
    if len({l.dim for l in lats}) != 1:
        raise DimensionMismatch("moduli of different dimension")
    return reduce(intersect, lats).basis


def is_right_multiple(r: Matrix, m: Matrix) -> bool:
    """True iff ``m^-1 r`` is an integer matrix."""
    adj, d = _inverse_data(as_square(m))
    return all(x % d == 0 for row in matmul(adj, r) for x in row)


def in_fpd(p: Sequence[int], m: Matrix) -> bool:
    """Exact test ``m^-1 p ∈ [0,1)^D``."""
    _check_dim(m, p)
    adj, d = _inverse_data(m)
    if d > 0:
        return all(0 <= x < d for x in matvec(adj, p))
    return all(d < x <= 0 for x in matvec(adj, p))


@dataclass(frozen=True)
class DivisionResult:
    quotient: Vector
    remainder: Vector


def vector_remainder(f: Sequence[int], m: Iterable[Iterable[int]]) -> DivisionResult:
    """Division ``f = m @ quotient + remainder`` with remainder in N(m)."""
    m = as_square(m)
    f = as_vector(f)
    _check_dim(m, f)
    adj, d = _inverse_data(m)
    (r,) = kernels.remainders([f], m, adj, d)
    q = tuple(x // d for x in matvec(adj, vsub(f, r)))
    return DivisionResult(quotient=q, remainder=r)


def remainder(f: Sequence[int], m: Matrix) -> Vector:
    return vector_remainder(f, m).remainder


def remainders(points: Iterable[Sequence[int]], m: Matrix) -> list[Vector]:
    """Batch form of :func:`remainder`."""
    adj, d = _inverse_data(m)
    return kernels.remainders(points, m, adj, d)


class Fpd:
    """The |det(m)| integer points of N(m).

    Iteration is lazy and restartable; the order is lexicographic in the
    Smith coordinates of ``m`` and therefore deterministic.
    """

    def __init__(self, modulus: Iterable[Iterable[int]]):
        self.modulus = as_square(modulus)
        self._adj, d = _inverse_data(self.modulus)
        self.size = abs(d)
        self._points: tuple[Vector, ...] | None = None

    def __len__(self) -> int:
        return self.size

    def __contains__(self, p) -> bool:
        return len(p) == len(self.modulus) and in_fpd(p, self.modulus)

    def __iter__(self) -> Iterator[Vector]:
        if self._points is not None:
            return iter(self._points)
        return self._generate()

    def _generate(self) -> Iterator[Vector]:
        s = snf(self.modulus)
        # m Z^D = left^-1 S Z^D since right is unimodular
        ladj = adjugate(s.left)
        ldet = det(s.left)
        linv = tuple(tuple(ldet * x for x in row) for row in ladj)
        ranges = [range(s.snf[i][i]) for i in range(len(self.modulus))]
        chunk: list[Vector] = []
        for y in itertools.product(*ranges):
            chunk.append(matvec(linv, y))
            if len(chunk) == 4096:
                yield from remainders(chunk, self.modulus)
                chunk = []
        if chunk:
            yield from remainders(chunk, self.modulus)

    def points(self) -> tuple[Vector, ...]:
        if self._points is None:
            self._points = tuple(self._generate())
        return self._points

    def index(self) -> dict[Vector, int]:
        """Map from point to its emission position."""
        return {p: i for i, p in enumerate(self.points())}


@lru_cache(maxsize=1024)
def _fpd_cached(m: Matrix) -> Fpd:
    return Fpd(m)


def fpd(m: Iterable[Iterable[int]]) -> Fpd:
    return _fpd_cached(as_square(m))


def in_half_lattice(v: Sequence[int], m: Iterable[Iterable[int]]) -> bool:
    """Membership in L_1/2(m), i.e. ``2v ∈ LAT(m)``."""
    m = as_square(m)
    _check_dim(m, v)
    return _in_lattice(m, tuple(2 * x for x in v))


def in_shifted_lattice_sum(v: Sequence[int], l: Lattice, shifts: Iterable[Sequence[int]]) -> bool:
    """True iff ``v - s ∈ l`` for some ``s`` in ``shifts`` (exhaustive scan)."""
    _check_dim(l.basis, v)
    return any(_in_lattice(l.basis, vsub(v, s)) for s in shifts)

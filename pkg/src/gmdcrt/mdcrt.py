"""Single-vector MD-CRT: solve f ≡ r_j (mod M_j) for one integer vector f."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NoSolution, ResidueOutOfRange
from .exactint import Matrix, Vector, as_square, as_vector, matvec, solve_integer, vadd, vsub
from .lattice import in_fpd, lattice_of, intersect, remainder


@dataclass(frozen=True)
class Congruence:
    modulus: Matrix
    residue: Vector

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_square(self.modulus))
        object.__setattr__(self, "residue", as_vector(self.residue))
        if len(self.residue) != len(self.modulus):
            raise DimensionMismatch("residue and modulus dimensions differ")
        if not in_fpd(self.residue, self.modulus):
            raise ResidueOutOfRange(f"{list(self.residue)} is not in N({[list(r) for r in self.modulus]})")


@dataclass(frozen=True)
class CrtSolution:
    value: Vector
    combined_modulus: Matrix


def merge_pair(a: Congruence, b: Congruence) -> Congruence:
    """Combine two congruences into one modulo their canonical lcrm.

    Solves ``A n1 - B n2 = rb - ra`` over the integers; raises
    :class:`NoSolution` when the residues are incompatible.
    """
    if len(a.modulus) != len(b.modulus):
        raise DimensionMismatch("congruences of different dimension")
    n = len(a.modulus)
    block = [list(ra) + [-x for x in rb] for ra, rb in zip(a.modulus, b.modulus)]
    z = solve_integer(block, vsub(b.residue, a.residue))
    if z is None:
        raise NoSolution(
            f"{list(a.residue)} mod {[list(r) for r in a.modulus]} and "
            f"{list(b.residue)} mod {[list(r) for r in b.modulus]} are incompatible"
        )
    f = vadd(matvec(a.modulus, z[:n]), a.residue)
    r = intersect(lattice_of(a.modulus), lattice_of(b.modulus)).basis
    return Congruence(r, remainder(f, r))


def solve(system: Sequence[Congruence]) -> CrtSolution:
    """Unique solution in N(R), R the canonical lcrm of all moduli."""
    if not system:
        raise ValueError("empty congruence system")
    if len({len(c.modulus) for c in system}) != 1:
        raise DimensionMismatch("congruences of different dimension")
    first = system[0]
    canon = lattice_of(first.modulus).basis
    start = Congruence(canon, remainder(first.residue, canon))
    merged = reduce(merge_pair, system[1:], start)
    return CrtSolution(value=merged.residue, combined_modulus=merged.modulus)


def solve_residues(moduli: Sequence[Matrix], residues: Iterable[Sequence[int]]) -> CrtSolution:
    return solve([Congruence(m, r) for m, r in zip(moduli, residues)])

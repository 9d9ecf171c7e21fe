"""Two-vector reconstruction when the difference of the vectors is constrained.

With two unknown vectors f1, f2 the residue sets are pairs. If the
difference d = f1 - f2 lies (up to sign) in ``LAT(R) + ⋂ N(M_j)`` and in
no half-lattice of a modulus, every residue pair has a unique orientation
and the full lcrm range ``N(R)`` is recoverable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

from . import mdcrt
from .errors import DimensionMismatch, InvalidOverride, NoCommonDifference, ResidueOutOfRange
from .exactint import Matrix, Vector, as_square, as_vector, vneg, vsub
from .lattice import fpd, in_fpd, in_half_lattice, in_shifted_lattice_sum, lattice_of, lcrm, remainder
from .multivec import ModuliSet


@dataclass(frozen=True)
class PairSystem:
    """Residue pairs ``{v_j1, v_j2}``, one per modulus."""

    ms: ModuliSet
    sets: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        if len(self.sets) != self.ms.gamma:
            raise DimensionMismatch(f"{len(self.sets)} residue pairs for {self.ms.gamma} moduli")
        norm = []
        for j, (m, s) in enumerate(zip(self.ms.moduli, self.sets)):
            # keep the caller's order, drop duplicates
            vecs = tuple(dict.fromkeys(as_vector(v) for v in s))
            if not 1 <= len(vecs) <= 2:
                raise ValueError(f"set {j} must hold one or two residues, got {len(vecs)}")
            for v in vecs:
                if len(v) != self.ms.dim:
                    raise DimensionMismatch(f"residue {list(v)} in set {j} has wrong length")
                if not in_fpd(v, m):
                    raise ResidueOutOfRange(f"residue {list(v)} in set {j} is not in N(M_{j})")
            norm.append(vecs)
        object.__setattr__(self, "sets", tuple(norm))


def pair_system(ms: ModuliSet, f1: Sequence[int], f2: Sequence[int]) -> PairSystem:
    a, b = as_vector(f1), as_vector(f2)
    return PairSystem(ms, tuple((remainder(a, m), remainder(b, m)) for m in ms.moduli))


@dataclass(frozen=True)
class DifferencePair:
    d1: Vector
    d2: Vector


def difference_pair(v1: Sequence[int], v2: Sequence[int], m: Matrix) -> DifferencePair:
    return DifferencePair(d1=remainder(vsub(v1, v2), m), d2=remainder(vsub(v2, v1), m))


def common_difference_set(ms: ModuliSet) -> frozenset:
    """Points shared by every FPD, i.e. the shift set of ``LAT(R) + ⋂ N(M_j)``."""
    common = set(fpd(ms[0]))
    for m in ms.moduli[1:]:
        common = {p for p in common if in_fpd(p, m)}
    return frozenset(common)


def _lcrm_lattice(ms: ModuliSet):
    return lattice_of(lcrm(ms.moduli))


def in_difference_range(ms: ModuliSet, d: Sequence[int]) -> bool:
    """``d ∈ LAT(R) + ⋂ N(M_j)``."""
    d = as_vector(d)
    return in_shifted_lattice_sum(d, _lcrm_lattice(ms), common_difference_set(ms))


def check_condition(ms: ModuliSet, d: Sequence[int]) -> bool:
    """Sufficient condition on the difference for unique pair recovery.

    The shifted-lattice set is not symmetric under negation, so both
    ``d`` and ``-d`` are tried. The half-lattices are symmetric and need a
    single test.
    """
    d = as_vector(d)
    if any(in_half_lattice(d, m) for m in ms.moduli):
        return False
    return in_difference_range(ms, d) or in_difference_range(ms, vneg(d))


def distinct_in_all_sets(ms: ModuliSet, f1: Sequence[int], f2: Sequence[int]) -> bool:
    return all(remainder(f1, m) != remainder(f2, m) for m in ms.moduli)


def asymmetric_difference(ms: ModuliSet, f1: Sequence[int], f2: Sequence[int]) -> bool:
    """True iff ``d_j1 != d_j2`` for every modulus."""
    for m in ms.moduli:
        r1, r2 = remainder(f1, m), remainder(f2, m)
        dp = difference_pair(r1, r2, m)
        if dp.d1 == dp.d2:
            return False
    return True


@dataclass(frozen=True)
class PairOutcome:
    """``vectors[0] - vectors[1]`` is congruent to ``d_star`` modulo every M_j."""

    d_star: Vector
    vectors: tuple[Vector, Vector]
    differences: tuple[DifferencePair, ...]


def reconstruct_pair(ps: PairSystem, r: Iterable[Iterable[int]] | None = None) -> PairOutcome:
    """Pair the residues through a common difference and solve two CRT systems.

    Args:
        ps: residue pairs.
        r: an lcrm of the moduli; solutions are returned in ``N(r)``.
            Defaults to the canonical lcrm.

    Raises:
        NoCommonDifference: a set holds a single residue, a set has a
            symmetric difference pair, or no difference is common to all sets.
        InvalidOverride: ``r`` does not span the lcrm lattice.
    """
    ms = ps.ms
    canon = lcrm(ms.moduli)
    if r is None:
        r = canon
    else:
        r = as_square(r)
        if lattice_of(r) != lattice_of(canon):
            raise InvalidOverride(f"{[list(x) for x in r]} is not an lcrm of the moduli")
    diffs = []
    for j, (m, s) in enumerate(zip(ms.moduli, ps.sets)):
        if len(s) != 2:
            raise NoCommonDifference(f"set {j} holds a single residue; the two vectors cannot be separated")
        dp = difference_pair(s[0], s[1], m)
        if dp.d1 == dp.d2:
            raise NoCommonDifference(f"set {j} has equal differences {list(dp.d1)}; orientation is ambiguous")
        diffs.append(dp)
    common = reduce(lambda acc, dp: acc & {dp.d1, dp.d2}, diffs[1:], {diffs[0].d1, diffs[0].d2})
    if not common:
        raise NoCommonDifference("no difference vector is shared by all residue pairs")
    d_star = min(common)
    first, second = [], []
    for s, dp in zip(ps.sets, diffs):
        a, b = (s[0], s[1]) if dp.d1 == d_star else (s[1], s[0])
        first.append(a)
        second.append(b)
    f1 = remainder(mdcrt.solve_residues(ms.moduli, first).value, r)
    f2 = remainder(mdcrt.solve_residues(ms.moduli, second).value, r)
    return PairOutcome(d_star=d_star, vectors=(f1, f2), differences=tuple(diffs))


@dataclass(frozen=True)
class OneDimProblem:
    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(x) for x in self.moduli)
        if not mods or mods[0] <= 1:
            raise ValueError("moduli must start above 1")
        if any(a >= b for a, b in zip(mods, mods[1:])):
            raise ValueError("moduli must be strictly increasing")
        object.__setattr__(self, "moduli", mods)

    @property
    def M(self) -> int:
        return lcm(*self.moduli)

    def as_moduli_set(self) -> ModuliSet:
        return ModuliSet(tuple(((m,),) for m in self.moduli))


def onedim_condition_set(p: OneDimProblem, via_lattice: bool = False) -> frozenset:
    """Admissible values of ``N2 - N1`` in ``[1, M-1]``.

    The direct formula drops every multiple of some ``m_j / 2`` from
    ``{1..m_1-1} ∪ {M-m_1+1..M-1}``. With ``via_lattice`` the set is
    recomputed from :func:`check_condition` on 1x1 moduli.
    """
    big, m1 = p.M, p.moduli[0]
    if via_lattice:
        ms = p.as_moduli_set()
        return frozenset(x for x in range(1, big) if check_condition(ms, (x,)))
    window = set(range(1, min(m1, big))) | set(range(max(big - m1 + 1, 1), big))
    # x is a multiple of m/2 iff 2x is a multiple of m
    return frozenset(x for x in window if all((2 * x) % m for m in p.moduli))


@dataclass(frozen=True)
class PriorSets:
    """Difference sets admitted by three earlier sufficient conditions."""

    half_smallest: frozenset
    all_odd: frozenset
    odd_but_last: frozenset


def onedim_prior_sets(p: OneDimProblem) -> PriorSets:
    m = p.moduli
    m1 = m[0]
    below = frozenset(range(1, m1))
    # ceil(m1/2) - 1
    half = frozenset(range(1, -(-m1 // 2)))
    all_odd = below if len(m) >= 2 and all(x % 2 for x in m) else frozenset()
    odd_last = below if all(x % 2 for x in m[:-1]) and m[-1] > 2 * m1 else frozenset()
    return PriorSets(half_smallest=half, all_odd=all_odd, odd_but_last=odd_last)

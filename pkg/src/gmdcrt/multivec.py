"""Reconstruction of several integer vectors from unordered residue sets.

No prior information on the unknown vectors is assumed. The guaranteed
range is ``N_eta``, the intersection of the FPDs of chosen lcrms of every
eta-subset of the moduli, where ``gamma = eta * rho + alpha``.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from . import mdcrt
from .errors import (
    DimensionMismatch,
    InconsistentSystem,
    InvalidOverride,
    NoSolution,
    ReconstructionFailed,
    ResidueOutOfRange,
    SingularMatrix,
)
from .exactint import Matrix, Vector, as_square, as_vector, det
from .lattice import fpd, in_fpd, lattice_of, lcrm, remainder, remainders

Subset = tuple[int, ...]


@dataclass(frozen=True)
class ModuliSet:
    moduli: tuple[Matrix, ...]

    def __post_init__(self):
        mods = tuple(as_square(m) for m in self.moduli)
        if not mods:
            raise ValueError("at least one modulus is required")
        if len({len(m) for m in mods}) != 1:
            raise DimensionMismatch("moduli of different dimension")
        for m in mods:
            if det(m) == 0:
                raise SingularMatrix(f"modulus {m} is singular")
        object.__setattr__(self, "moduli", mods)

    @property
    def gamma(self) -> int:
        return len(self.moduli)

    @property
    def dim(self) -> int:
        return len(self.moduli[0])

    def __len__(self) -> int:
        return len(self.moduli)

    def __getitem__(self, j: int) -> Matrix:
        return self.moduli[j]


def _fpd_order(m: Matrix) -> dict[Vector, int]:
    return fpd(m).index()


@dataclass(frozen=True)
class ResidueSetSystem:
    """``gamma`` unordered residue sets; each stored in FPD emission order."""

    sets: tuple[tuple[Vector, ...], ...]
    rho: int

    def as_frozensets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(s) for s in self.sets)

    @property
    def gamma(self) -> int:
        return len(self.sets)


def make_system(ms: ModuliSet, sets: Sequence[Iterable[Sequence[int]]], rho: int) -> ResidueSetSystem:
    """Validate and canonicalize raw residue sets."""
    if len(sets) != ms.gamma:
        raise DimensionMismatch(f"{len(sets)} residue sets for {ms.gamma} moduli")
    if rho < 1:
        raise ValueError("rho must be positive")
    out = []
    for j, (m, raw) in enumerate(zip(ms.moduli, sets)):
        vecs = {as_vector(v) for v in raw}
        for v in vecs:
            if len(v) != ms.dim:
                raise DimensionMismatch(f"residue {list(v)} in set {j} has wrong length")
            if not in_fpd(v, m):
                raise ResidueOutOfRange(f"residue {list(v)} in set {j} is not in N(M_{j})")
        if not 1 <= len(vecs) <= rho:
            raise ValueError(f"set {j} has {len(vecs)} residues, expected 1..{rho}")
        order = _fpd_order(m)
        out.append(tuple(sorted(vecs, key=order.__getitem__)))
    return ResidueSetSystem(sets=tuple(out), rho=rho)


def residue_system(ms: ModuliSet, vectors: Iterable[Sequence[int]]) -> ResidueSetSystem:
    """The residue sets S_j generated by distinct vectors."""
    vecs = [as_vector(v) for v in vectors]
    if len(set(vecs)) != len(vecs):
        raise ValueError("unknown vectors must be distinct")
    sets = [set(remainders(vecs, m)) for m in ms.moduli]
    return make_system(ms, sets, len(vecs))


@dataclass(frozen=True)
class DeterminableRange:
    eta: int
    alpha: int
    subset_lcrms: Mapping[Subset, Matrix]
    points: frozenset

    def __contains__(self, v) -> bool:
        return tuple(v) in self.points

    def __len__(self) -> int:
        return len(self.points)


def compute_range(ms: ModuliSet, rho: int, lcrm_overrides: Optional[Mapping[Subset, Matrix]] = None) -> DeterminableRange:
    """N_eta for ``rho`` unknown vectors, using canonical lcrms unless overridden.

    Override keys are sorted 0-based index tuples of size eta.
    """
    if rho < 1 or ms.gamma < rho:
        raise ValueError(f"need 1 <= rho <= gamma, got rho={rho}, gamma={ms.gamma}")
    eta, alpha = divmod(ms.gamma, rho)
    overrides = {tuple(sorted(k)): as_square(v) for k, v in (lcrm_overrides or {}).items()}
    subsets = list(itertools.combinations(range(ms.gamma), eta))
    unknown = set(overrides) - set(subsets)
    if unknown:
        raise InvalidOverride(f"override keys {sorted(unknown)} are not {eta}-subsets of the moduli")
    chosen: dict[Subset, Matrix] = {}
    for a in subsets:
        canon = lcrm([ms[j] for j in a])
        if a in overrides:
            r = overrides[a]
            if len(r) != ms.dim or det(r) == 0 or lattice_of(r) != lattice_of(canon):
                raise InvalidOverride(f"matrix {r} is not an lcrm of moduli {list(a)}")
            chosen[a] = r
        else:
            chosen[a] = canon
    ordered = sorted(chosen.values(), key=lambda r: abs(det(r)))
    pts = [p for p in fpd(ordered[0]) if all(in_fpd(p, r) for r in ordered[1:])]
    return DeterminableRange(eta=eta, alpha=alpha, subset_lcrms=chosen, points=frozenset(pts))


def uniquely_determinable(ms: ModuliSet, rng: DeterminableRange, vectors: Iterable[Sequence[int]]) -> bool:
    """Sufficient uniqueness test: all vectors in one N(M_j), or all in N_eta."""
    vecs = [as_vector(v) for v in vectors]
    if any(all(in_fpd(v, m) for v in vecs) for m in ms.moduli):
        return True
    return all(v in rng.points for v in vecs)


def candidate_valid(f: Sequence[int], rng: DeterminableRange, system: ResidueSetSystem, ms: ModuliSet) -> bool:
    f = as_vector(f)
    if f not in rng.points:
        return False
    return all(remainder(f, m) in s for m, s in zip(ms.moduli, system.sets))


def crt_invocation_bound(gamma: int, rho: int) -> int:
    """Worst-case number of MD-CRT solves when every residue set is full."""
    if not 1 <= rho <= gamma:
        raise ValueError("need 1 <= rho <= gamma")
    eta = gamma // rho
    total = 0
    for l in range(1, rho + 1):
        groups = rho - l + 1
        eta_l, alpha_l = divmod(gamma, groups)
        total += comb(gamma, eta) - alpha_l * comb(eta_l + 1, eta) - (groups - alpha_l) * comb(eta_l, eta) + 1
    return total


@dataclass
class AuditEvent:
    """One step of a reconstruction run.

    ``kind`` is one of ``candidate``, ``round-failed``, ``correction``,
    ``fast-path`` or ``audit-failed``. Set indices are 0-based.
    """

    kind: str
    round: int
    tuple: Optional[tuple[Vector, ...]] = None
    subset: Optional[Subset] = None
    solve_value: Optional[Vector] = None
    candidate: Optional[Vector] = None
    accepted: bool = False
    reason: str = ""
    corrections: tuple[tuple[int, Vector, Vector], ...] = ()

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "round": self.round}
        if self.tuple is not None:
            out["tuple"] = [list(v) for v in self.tuple]
        if self.subset is not None:
            out["subset"] = list(self.subset)
        if self.solve_value is not None:
            out["solve_value"] = list(self.solve_value)
        if self.candidate is not None:
            out["candidate"] = list(self.candidate)
        if self.kind in ("candidate", "fast-path"):
            out["accepted"] = self.accepted
        if self.reason:
            out["reason"] = self.reason
        if self.corrections:
            out["corrections"] = [
                {"set": j, "removed": list(a), "restored": list(b)} for j, a, b in self.corrections
            ]
        return out


@dataclass(frozen=True)
class ReconstructionOutcome:
    vectors: frozenset
    found_order: tuple[Vector, ...]
    rounds: tuple[AuditEvent, ...]
    crt_invocations: int

    def sorted_vectors(self) -> list[Vector]:
        return sorted(self.vectors)


@dataclass
class CorrectionState:
    """Mutable residue sets plus the bookkeeping needed to undo wrong removals.

    ``anchored[j]`` holds residues of already determined vectors kept in
    ``sets[j]`` because the set was too small to remove them;
    ``removed[l][j]`` lists what successful round ``l`` removed from set j.
    """

    sets: list[list[Vector]]
    anchored: list[list[Vector]]
    removed: list[list[list[Vector]]] = field(default_factory=list)
    found: list[Vector] = field(default_factory=list)

    @property
    def successful_rounds(self) -> int:
        return len(self.found)

    def history(self, j: int) -> list[Vector]:
        """B_l(j): residues removed from set j over the successful rounds so far."""
        return [v for rnd in self.removed for v in rnd[j]]


class _Reconstructor:
    def __init__(self, ms: ModuliSet, system: ResidueSetSystem, rng: DeterminableRange):
        self.ms = ms
        self.system = system
        self.rng = rng
        self.rho = system.rho
        self.subsets = sorted(rng.subset_lcrms)
        self.orders = [_fpd_order(m) for m in ms.moduli]
        self.events: list[AuditEvent] = []
        self.invocations = 0
        self.audit_failures = 0
        self._cache: dict = {}

    def _solve(self, idx: Sequence[int], residues: Sequence[Vector]) -> Optional[Vector]:
        key = (tuple(idx), tuple(residues))
        if key not in self._cache:
            self.invocations += 1
            try:
                sol = mdcrt.solve_residues([self.ms[j] for j in idx], residues)
                self._cache[key] = sol.value
            except NoSolution:
                self._cache[key] = None
        return self._cache[key]

    def _valid(self, f: Vector, state: CorrectionState) -> tuple[bool, str]:
        if f not in self.rng.points:
            return False, "not in N_eta"
        rems = [remainder(f, m) for m in self.ms.moduli]
        if any(r not in s for r, s in zip(rems, state.sets)):
            return False, "residues not in current sets"
        return True, "accepted"

    def _accept(self, f: Vector, state: CorrectionState) -> None:
        remaining = self.rho - state.successful_rounds
        removed_now: list[list[Vector]] = []
        for j, m in enumerate(self.ms.moduli):
            r = remainder(f, m)
            gone: list[Vector] = []
            if len(state.sets[j]) == remaining:
                state.sets[j].remove(r)
                gone.append(r)
            elif r not in state.anchored[j]:
                state.anchored[j].append(r)
            state.anchored[j] = [a for a in state.anchored[j] if a in state.sets[j]]
            removed_now.append(gone)
        state.removed.append(removed_now)
        state.found.append(f)

    def _round(self, state: CorrectionState) -> bool:
        rnd = state.successful_rounds
        remaining = self.rho - rnd
        for choice in itertools.product(*state.sets):
            if remaining == 1:
                g = self._solve(range(self.ms.gamma), choice)
                if g is None:
                    self.events.append(AuditEvent("candidate", rnd, choice, tuple(range(self.ms.gamma)), None, None, False, "no solution"))
                    continue
                f = remainder(g, self.rng.subset_lcrms[self.subsets[0]])
                ok, why = self._valid(f, state)
                self.events.append(AuditEvent("candidate", rnd, choice, tuple(range(self.ms.gamma)), g, f, ok, why))
                if ok:
                    self._accept(f, state)
                    return True
                continue
            for a in self.subsets:
                g = self._solve(a, [choice[j] for j in a])
                if g is None:
                    self.events.append(AuditEvent("candidate", rnd, choice, a, None, None, False, "no solution"))
                    continue
                f = remainder(g, self.rng.subset_lcrms[a])
                ok, why = self._valid(f, state)
                self.events.append(AuditEvent("candidate", rnd, choice, a, g, f, ok, why))
                if ok:
                    self._accept(f, state)
                    return True
        self.events.append(AuditEvent("round-failed", rnd, reason="no valid candidate"))
        return False

    def run(self, state: CorrectionState) -> Optional[list[Vector]]:
        while state.successful_rounds < self.rho:
            if not self._round(state):
                return self._correct(state)
        regenerated = [frozenset(remainders(state.found, m)) for m in self.ms.moduli]
        if tuple(regenerated) != self.system.as_frozensets():
            self.audit_failures += 1
            self.events.append(AuditEvent("audit-failed", state.successful_rounds, reason="regenerated residues differ from input"))
            return None
        return list(state.found)

    def _options(self, state: CorrectionState, j: int) -> list[tuple[int, Vector, Vector]]:
        history = state.history(j)
        return [
            (j, a, b)
            for a in state.anchored[j]
            if a in state.sets[j]
            for b in history
            if b not in state.sets[j]
        ]

    def _correct(self, state: CorrectionState) -> Optional[list[Vector]]:
        eligible = [j for j in range(self.ms.gamma) if self._options(state, j)]
        for tier in range(1, len(eligible) + 1):
            for group in itertools.combinations(eligible, tier):
                for combo in itertools.product(*(self._options(state, j) for j in group)):
                    trial = copy.deepcopy(state)
                    for j, a, b in combo:
                        trial.sets[j].remove(a)
                        trial.sets[j].append(b)
                        trial.sets[j].sort(key=self.orders[j].__getitem__)
                        trial.anchored[j].remove(a)
                        for rnd in trial.removed:
                            if b in rnd[j]:
                                rnd[j].remove(b)
                    self.events.append(AuditEvent("correction", state.successful_rounds, corrections=combo))
                    result = self.run(trial)
                    if result is not None:
                        return result
        return None

    def fast_path(self) -> Optional[list[Vector]]:
        target = self.system.as_frozensets()
        for j, s in enumerate(self.system.sets):
            if len(s) != self.rho:
                continue
            if tuple(frozenset(remainders(s, m)) for m in self.ms.moduli) == target:
                self.events.append(AuditEvent("fast-path", 0, subset=(j,), accepted=True, reason=f"all vectors in N(M_{j})"))
                return list(s)
        return None


def reconstruct(ms: ModuliSet, system: ResidueSetSystem, rng: DeterminableRange) -> ReconstructionOutcome:
    """Recover the unordered set of unknown vectors from their residue sets.

    Raises :class:`ReconstructionFailed` when every correction has been
    exhausted, and :class:`InconsistentSystem` when a complete candidate
    set was found but does not regenerate the input.
    """
    if system.gamma != ms.gamma:
        raise DimensionMismatch("residue system and moduli disagree on gamma")
    expected = divmod(ms.gamma, system.rho)
    if (rng.eta, rng.alpha) != expected:
        raise ValueError(f"range was computed for eta={rng.eta}, expected eta={expected[0]} for rho={system.rho}")
    worker = _Reconstructor(ms, system, rng)
    found = worker.fast_path()
    if found is None:
        state = CorrectionState(
            sets=[list(s) for s in system.sets],
            anchored=[[] for _ in system.sets],
        )
        found = worker.run(state)
    if found is None:
        if worker.audit_failures:
            raise InconsistentSystem("candidate vectors do not regenerate the input residue sets")
        raise ReconstructionFailed("no consistent vector set in the determinable range")
    return ReconstructionOutcome(
        vectors=frozenset(found),
        found_order=tuple(found),
        rounds=tuple(worker.events),
        crt_invocations=worker.invocations,
    )

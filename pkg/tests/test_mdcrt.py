import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmdcrt.errors import DimensionMismatch, NoSolution, ResidueOutOfRange
from gmdcrt.exactint import diag, identity
from gmdcrt.lattice import fpd, in_fpd, lattice_of, lcrm, remainder
from gmdcrt.mdcrt import Congruence, merge_pair, solve, solve_residues
from oracles import brute_crt, leibniz_det, naive_remainder

M1 = ((3, 0), (1, 3))
M2 = ((3, 1), (0, 3))


def test_congruence_validation():
    with pytest.raises(ResidueOutOfRange):
        Congruence(M1, (3, 0))
    with pytest.raises(DimensionMismatch):
        Congruence(M1, (1,))


class TestMergePair:
    def test_identical_moduli(self):
        m = ((2, 5), (1, -3))
        r = next(iter(fpd(m)))
        out = merge_pair(Congruence(m, r), Congruence(m, r))
        assert out.modulus == lattice_of(m).basis
        assert out.residue == remainder(r, out.modulus)

    def test_example1_pair(self):
        out = merge_pair(Congruence(M1, (2, 1)), Congruence(M2, (2, 1)))
        assert out.residue == (2, 1)
        assert lattice_of(out.modulus) == lattice_of(diag(9, 9))

    def test_example2_pair(self, ex2):
        m2, m3 = ex2["moduli"][1], ex2["moduli"][2]
        out = merge_pair(Congruence(m2, (0, 0)), Congruence(m3, (1, 4)))
        assert out.residue == (1, 12)
        # the value [0,24] does not satisfy the first congruence
        assert remainder((0, 24), m2) == (1, 0)
        box = list(fpd(lcrm([m2, m3])))
        assert brute_crt([m2, m3], [(0, 0), (1, 4)], box) == [(1, 12)]
        # same answer in the FPD of the other lcrm basis of this pair
        alt = ((4, 0), (-15, 36))
        assert lattice_of(alt) == lattice_of(lcrm([m2, m3]))
        assert remainder((1, 12), alt) == (1, 12)

    def test_incompatible(self):
        with pytest.raises(NoSolution):
            merge_pair(Congruence(diag(2, 2), (0, 0)), Congruence(diag(2, 4), (1, 0)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            merge_pair(Congruence(identity(1), (0,)), Congruence(identity(2), (0, 0)))


class TestSolve:
    def test_single(self):
        assert solve([Congruence(M1, (2, 1))]).value == (2, 1)

    def test_example2_six_residues(self, ex2):
        mods = ex2["moduli"]
        wrong = [(1, 2), (2, 2), (1, 4), (3, 0), (1, 3), (1, 1)]
        sol = solve_residues(mods, wrong)
        assert sol.value == (1441, 3176)
        assert lattice_of(sol.combined_modulus) == lattice_of(diag(3600, 3600))
        fixed = wrong[:5] + [(5, 3)]
        assert solve_residues(mods, fixed).value == (1, 8)

    def test_empty_and_mixed(self):
        with pytest.raises(ValueError):
            solve([])
        with pytest.raises(DimensionMismatch):
            solve([Congruence(identity(1), (0,)), Congruence(identity(2), (0, 0))])

    def test_infeasible_system(self):
        with pytest.raises(NoSolution):
            solve_residues([diag(2, 2), diag(4, 2)], [(1, 0), (0, 0)])

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 2**32))
    def test_round_trip(self, n, seed):
        r = random.Random(seed)
        count = r.randint(1, 4)
        mods = []
        while len(mods) < count:
            m = tuple(tuple(r.randint(-5, 5) for _ in range(n)) for _ in range(n))
            if leibniz_det(m):
                mods.append(m)
        big = lcrm(mods)
        f = r.choice(list(fpd(big))) if abs(leibniz_det(big)) < 5000 else remainder(
            tuple(r.randint(-999, 999) for _ in range(n)), big)
        sol = solve_residues(mods, [naive_remainder(f, m) for m in mods])
        assert sol.value == f
        assert in_fpd(sol.value, sol.combined_modulus)
        perm = list(range(len(mods)))
        r.shuffle(perm)
        again = solve_residues([mods[i] for i in perm], [naive_remainder(f, mods[i]) for i in perm])
        assert again.value == f


def test_uniqueness_exhaustive():
    """The residue map is injective on N(R) and anything outside collides with its reduction."""
    mods = [M1, M2, ((2, 1), (0, 2))]
    big = lcrm(mods)
    seen = {}
    for f in fpd(big):
        key = tuple(naive_remainder(f, m) for m in mods)
        assert key not in seen
        seen[key] = f
    assert len(seen) == abs(leibniz_det(big))
    rnd = random.Random(7)
    for _ in range(200):
        f = (rnd.randint(-300, 300), rnd.randint(-300, 300))
        key = tuple(naive_remainder(f, m) for m in mods)
        assert seen[key] == remainder(f, big)


def test_scalar_matches_integer_crt():
    for a, b in itertools.product(range(4), range(6)):
        sols = [x for x in range(12) if x % 4 == a and x % 6 == b]
        if sols:
            assert solve_residues([((4,),), ((6,),)], [(a,), (b,)]).value == (sols[0],)
        else:
            with pytest.raises(NoSolution):
                solve_residues([((4,),), ((6,),)], [(a,), (b,)])

"""Slow, obviously-correct reference implementations used only by the tests."""

import itertools
from fractions import Fraction
from math import floor, prod


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * prod(m[i][perm[i]] for i in range(n))
    return total


def rational_solve(m, f):
    """m^-1 f by Gauss-Jordan over Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, f)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                k = a[r][c]
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    return [row[-1] for row in a]


def naive_remainder(f, m):
    """f - m floor(m^-1 f), componentwise floor in exact rationals."""
    x = rational_solve(m, f)
    q = [floor(v) for v in x]
    return tuple(fi - sum(mij * qj for mij, qj in zip(row, q)) for fi, row in zip(f, m))


def in_unit_cube(p, m):
    return all(0 <= v < 1 for v in rational_solve(m, p))


def box_fpd(m):
    """All integer points of N(m) by scanning the bounding box of its corners."""
    n = len(m)
    corners = [tuple(sum(m[i][j] * c[j] for j in range(n)) for i in range(n)) for c in itertools.product((0, 1), repeat=n)]
    lo = [min(c[i] for c in corners) for i in range(n)]
    hi = [max(c[i] for c in corners) for i in range(n)]
    return {p for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))) if in_unit_cube(p, m)}


def in_lattice(m, v):
    return all(x.denominator == 1 for x in rational_solve(m, v))


def brute_crt(moduli, residues, candidates):
    """Every candidate point whose remainders match."""
    return [f for f in candidates if all(naive_remainder(f, m) == r for m, r in zip(moduli, residues))]


def random_nonsingular(rnd, n, lo=-9, hi=9):
    while True:
        m = tuple(tuple(rnd.randint(lo, hi) for _ in range(n)) for _ in range(n))
        if leibniz_det(m) != 0:
            return m


def random_unimodular(rnd, n, steps=6):
    """Product of random elementary column operations."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return ((rnd.choice((1, -1)),),)
    for _ in range(steps):
        i, j = rnd.sample(range(n), 2)
        k = rnd.randint(-3, 3)
        for row in u:
            row[j] += k * row[i]
    return tuple(tuple(r) for r in u)

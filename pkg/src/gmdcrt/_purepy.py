"""Pure-Python reference kernels; always available."""

import cmath
import math


def remainders(points, m, adj, d):
    """Batch vector remainder of each point modulo ``m``.

    ``adj`` and ``d`` are the adjugate and determinant of ``m``.
    """
    s = 1 if d > 0 else -1
    q = abs(d)
    out = []
    for p in points:
        k = [(s * sum(a * x for a, x in zip(row, p))) % q for row in adj]
        out.append(tuple(sum(mi * ki for mi, ki in zip(row, k)) // q for row in m))
    return out


def phase_sum(rows, cols, weights, q, sign):
    """out[r] = sum_c weights[c] * exp(sign * 2j*pi * ((rows[r] . cols[c]) mod q) / q)."""
    unit = 2.0 * math.pi / q
    twiddle = {}
    out = []
    for r in rows:
        acc = 0j
        for c, w in zip(cols, weights):
            ph = sum(a * b for a, b in zip(r, c)) % q
            z = twiddle.get(ph)
            if z is None:
                z = twiddle[ph] = cmath.exp(1j * unit * ph)
            acc += w * (z if sign > 0 else z.conjugate())
        out.append(acc)
    return out

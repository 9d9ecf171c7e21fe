"""Hot-loop dispatch: compiled extension when importable, pure Python otherwise.

Set ``GMDCRT_PURE_PYTHON=1`` to force the fallback. Inputs whose int64
intermediates could overflow are always routed to the fallback, so results
are exact either way.
"""

from __future__ import annotations

import os

from . import _purepy

try:
    if os.environ.get("GMDCRT_PURE_PYTHON"):
        raise ImportError("pure Python kernels forced by environment")
    import numpy as np

    from . import _speedups
except ImportError:
    _speedups = None

BACKEND = "compiled" if _speedups is not None else "python"

_LIMIT = 1 << 62
# cos/sin tables are allocated per modulus in the compiled phase_sum
_MAX_TABLE = 1 << 22


def _maxabs(rows):
    return max((abs(x) for row in rows for x in row), default=0)


def remainders(points, m, adj, d, *, backend=None):
    """Vector remainders (f mod m) for a batch of points; see ``_purepy.remainders``."""
    points = list(points)
    use = backend or BACKEND
    if use == "compiled" and _speedups is not None and points:
        dim = len(m)
        ok = (
            _maxabs(adj) * _maxabs(points) * dim < _LIMIT
            and _maxabs(m) * abs(d) * dim < _LIMIT
        )
        if ok:
            arr = _speedups.remainders(
                np.ascontiguousarray(points, dtype=np.int64),
                np.ascontiguousarray(m, dtype=np.int64),
                np.ascontiguousarray(adj, dtype=np.int64),
                int(d),
            )
            return [tuple(int(x) for x in row) for row in arr.tolist()]
    return _purepy.remainders(points, m, adj, d)


def phase_sum(rows, cols, weights, q, sign, *, backend=None):
    """Exponential sums with exact integer phases; see ``_purepy.phase_sum``."""
    rows = list(rows)
    cols = list(cols)
    weights = [complex(w) for w in weights]
    use = backend or BACKEND
    if use == "compiled" and _speedups is not None and rows and cols:
        dim = len(rows[0])
        if q <= _MAX_TABLE and _maxabs(rows) * _maxabs(cols) * dim < _LIMIT:
            out = _speedups.phase_sum(
                np.ascontiguousarray(rows, dtype=np.int64),
                np.ascontiguousarray(cols, dtype=np.int64),
                np.ascontiguousarray(weights, dtype=np.complex128),
                int(q),
                int(sign),
            )
            return out.tolist()
    return _purepy.phase_sum(rows, cols, weights, q, sign)

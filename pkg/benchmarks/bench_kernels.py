"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is first checked for identical output on both backends.
"""

import argparse
import random
import timeit

from gmdcrt import kernels
from gmdcrt.exactint import adjugate, det, transpose
from gmdcrt.lattice import fpd


def remainder_workload(n=20000, seed=1):
    rnd = random.Random(seed)
    m = ((37, 5, -3), (2, 41, 7), (-6, 1, 29))
    pts = [tuple(rnd.randrange(-10**6, 10**6) for _ in range(3)) for _ in range(n)]
    return (pts, m, adjugate(m), det(m)), {}


def dft_workload():
    m = ((24, 5), (-3, 31))
    d = det(m)
    s = 1 if d > 0 else -1
    adj = adjugate(m)
    ks = list(fpd(m))
    rows = [tuple(s * sum(a * x for a, x in zip(r, k)) for r in adj) for k in ks]
    ns = list(fpd(transpose(m)))
    rnd = random.Random(2)
    w = [complex(rnd.gauss(0, 1), rnd.gauss(0, 1)) for _ in ns]
    return (rows, ns, w, abs(d), -1), {}


def bench(name, fn, args, repeat):
    if kernels.BACKEND != "compiled":
        print(f"{name}: compiled extension unavailable, timing the fallback only")
    out = {}
    for backend in ("python", "compiled"):
        if backend == "compiled" and kernels.BACKEND != "compiled":
            continue
        res = fn(*args, backend=backend)
        out[backend] = res
        t = min(timeit.repeat(lambda: fn(*args, backend=backend), number=1, repeat=repeat))
        print(f"{name:12s} {backend:9s} {t * 1e3:9.2f} ms")
    if len(out) == 2:
        a, b = out["python"], out["compiled"]
        if name == "remainders":
            same = a == b
        else:
            same = max(abs(x - y) for x, y in zip(a, b)) <= 1e-9 * max(abs(x) for x in a)
        print(f"{name:12s} outputs agree: {same}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    a, _ = remainder_workload()
    bench("remainders", kernels.remainders, a, args.repeat)
    a, _ = dft_workload()
    bench("phase_sum", kernels.phase_sum, a, args.repeat)


if __name__ == "__main__":
    main()

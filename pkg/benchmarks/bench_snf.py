"""Compare the compiled and pure-Python Smith normal form kernels.

    python3 benchmarks/bench_snf.py [--repeat N]

Workloads: boundary matrices of random algebras and random graphs (sparse,
+-1 entries, the common case) and small dense matrices. Random dense matrices
much beyond 16x16 grow int64-overflowing intermediates, so both backends end
up in big-integer Python there and the comparison says nothing. Both backends must
return the same invariant factors; a mismatch aborts the run.
"""

import argparse
import random
import sys
import time

from alpay_workbench import _backend
from alpay_workbench.generate import RandomAlgebraParams, random_algebra
from alpay_workbench.homology import ALL, KEEP, EdgePolicy, build_complex
from alpay_workbench.snf import smith_normal_form


def workloads():
    rng = random.Random(0)
    d1s = [build_complex(random_algebra(RandomAlgebraParams(6, 4, s, 2)), EdgePolicy(ALL, KEEP)).d1
           for s in range(20)]
    yield "incidence d1 x20 (random algebras, all edges)", d1s, False
    yield "incidence d1 x20, with transforms", d1s, True
    yield "graph incidence 300x900", [incidence(rng, 300, 900)], False
    yield "graph incidence 300x900, with transforms", [incidence(rng, 300, 900)], True
    yield "dense 12x12 x200 in [-9, 9], with transforms", [[[rng.randint(-9, 9) for _ in range(12)]
                                                             for _ in range(12)] for _ in range(200)], True
    yield "dense 16x16 x20 in [-3, 3]", [[[rng.randint(-3, 3) for _ in range(16)] for _ in range(16)]
                                        for _ in range(20)], False


def incidence(rng, vertices, edges):
    """Boundary matrix of a random directed multigraph: one -1 and one +1 per column."""
    m = [[0] * edges for _ in range(vertices)]
    for j in range(edges):
        u, v = rng.sample(range(vertices), 2)
        m[u][j], m[v][j] = -1, 1
    return m


def timed(matrices, transforms, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = [smith_normal_form(m, transforms=transforms, backend=backend).invariant_factors for m in matrices]
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if not _backend.compiled_available():
        print("compiled kernels are not built; only the python backend is available", file=sys.stderr)
        return 1
    print(f"{'workload':<48} {'python s':>9} {'compiled s':>11} {'speedup':>8}")
    for label, matrices, transforms in workloads():
        tp, fp = timed(matrices, transforms, "python", args.repeat)
        tc, fc = timed(matrices, transforms, "compiled", args.repeat)
        if fp != fc:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        print(f"{label:<48} {tp:>9.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

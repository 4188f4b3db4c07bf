"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_backends.py [--repeat 5]

Part 1 times the kernels directly on the reference table pairs.  Part 2 runs
a whole search in a subprocess per backend, selected with ACYCMATCH_BACKEND.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from acycmatch import kernels
from acycmatch.groups import GroupSpec, Subset
from acycmatch.harness import REFERENCE_TABLE
from acycmatch.matching import compatibility

SEARCH_SNIPPET = (
    "import time; from acycmatch import _accel, acyclic_property_search as s; "
    "s(7); t=time.perf_counter(); r=s({n}); "
    "print(_accel.BACKEND, r.pairs_examined, round(time.perf_counter()-t, 3))"
)


def kernel_rows(repeat: int):
    for p in (11, 13, 17, 19):
        spec = GroupSpec.cyclic(p)
        A, B = (Subset.parse(spec, s) for s in REFERENCE_TABLE[p])
        allowed, sums = compatibility(spec, A, B)
        base = spec.order
        # warm the JIT before timing
        ref = kernels.matching_codes_numba(allowed, sums, base)
        alt = kernels.matching_codes_numpy(allowed, sums, base)
        assert np.array_equal(ref[1], alt[1])
        t_nb = min(timeit.repeat(lambda: kernels.matching_codes_numba(allowed, sums, base), number=1, repeat=repeat))
        t_np = min(timeit.repeat(lambda: kernels.matching_codes_numpy(allowed, sums, base), number=1, repeat=repeat))
        yield p, len(A), len(ref[1]), t_nb, t_np


def search_rows(n: int):
    for backend in ("numba", "numpy"):
        env = dict(os.environ, ACYCMATCH_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", SEARCH_SNIPPET.format(n=n)], env=env,
                             capture_output=True, text=True, check=True)
        yield out.stdout.split()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--search-modulus", type=int, default=11)
    args = ap.parse_args()
    print("kernel: matching_codes on reference pairs (best of %d)" % args.repeat)
    print(f"{'p':>3} {'k':>3} {'matchings':>10} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for p, k, count, t_nb, t_np in kernel_rows(args.repeat):
        print(f"{p:>3} {k:>3} {count:>10} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f}")
    print(f"\nfull acyclic search, Z/{args.search_modulus}Z")
    for backend, pairs, secs in search_rows(args.search_modulus):
        print(f"  {backend:<6} pairs={pairs} seconds={secs}")


if __name__ == "__main__":
    main()

"""Time the numba kernels against their numpy twins, then the lattice end to end.

    python benchmarks/bench_kernels.py [--repeat 5]

The end-to-end part runs a fresh interpreter per backend because the backend
is picked once at import from AUTOMIZER_LAB_NUMBA.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from automizer_lab import _kernels as K
from automizer_lab.catalog import cyclic, dihedral, symmetric
from automizer_lab.group import direct_product

END_TO_END = """
import time
from automizer_lab.catalog import symmetric, cyclic
from automizer_lab.group import direct_product
from automizer_lab.predicates import is_pnc
from automizer_lab import _kernels as K
g = direct_product(symmetric(4), cyclic(2))
is_pnc(direct_product(symmetric(3), cyclic(2)))  # warm up / compile
t = time.perf_counter()
is_pnc(g)
print(K.backend_name(), f"{time.perf_counter() - t:.4f}")
"""


def cases():
    s5 = symmetric(5)
    d64 = dihedral(64)
    s4z2 = direct_product(symmetric(4), cyclic(2))
    for g in (s4z2, s5, d64):
        t, e = g.table, g.identity
        some = np.arange(0, g.order, 7, dtype=np.int64)
        mask = K.closure(t, e, some[:2])
        members = np.flatnonzero(mask).astype(np.int64)
        yield g.name, "assoc_violation", (t,)
        yield g.name, "element_orders", (t, e)
        yield g.name, "closure", (t, e, some[:2])
        yield g.name, "centralizer", (t, members)
        yield g.name, "normalizer", (t, g.inverse, mask, members)
        yield g.name, "relative_orders", (t, e, np.arange(g.order, dtype=np.int64), mask)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'group':<8} {'kernel':<16} {'numba ms':>10} {'numpy ms':>10} {'ratio':>7}")
    for name, kernel, argv in cases():
        fast = getattr(K.numba_kernels, kernel)
        slow = getattr(K.numpy_kernels, kernel)
        fast(*argv)  # compile outside the timing
        tf = min(timeit.repeat(lambda: fast(*argv), number=1, repeat=args.repeat))
        ts = min(timeit.repeat(lambda: slow(*argv), number=1, repeat=args.repeat))
        print(f"{name:<8} {kernel:<16} {tf * 1e3:>10.3f} {ts * 1e3:>10.3f} {ts / tf:>7.1f}")

    print("\nis_pnc(S4xZ2), fresh process per backend:")
    for flag in ("1", "0"):
        env = dict(os.environ, AUTOMIZER_LAB_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        print("  " + out.stdout.strip() + " s")


if __name__ == "__main__":
    main()

"""Time the numba and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from constacode import _kernels, gf
from constacode import constacyclic as cc
from constacode.linear_code import _prime_rows


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_histogram(label, code, repeat):
    F = code.field
    rows = _prime_rows(code)
    add, mul, _, _ = F.small_tables()
    _kernels.weight_histogram_numba(rows[:1], add, F.p)  # compile
    t_nb, a = _best(lambda: _kernels.weight_histogram_numba(rows, add, F.p), repeat)
    t_np, b = _best(lambda: _kernels.weight_histogram_numpy(rows, add, mul, F.p), repeat)
    assert np.array_equal(a, b)
    words = F.p ** rows.shape[0]
    print(f"{label:<28} {words:>12,} words  numba {t_nb:8.3f} s  numpy {t_np:8.3f} s  x{t_np / t_nb:6.1f}")


def bench_antilog(p, s, repeat):
    F = gf.field_create(p, s)
    _kernels.antilog_x_numba(p, 2, (1, 1, 1) if p == 2 else gf.field_create(p, 2).poly)
    t_nb, a = _best(lambda: _kernels.antilog_x_numba(p, s, F.poly), repeat)
    t_np, b = _best(lambda: _kernels.antilog_numpy(p, s, lambda L: F.mul_matrix(F.pow(F.generator, L))), repeat)
    assert np.array_equal(a, b)
    print(f"{f'antilog GF({p}^{s})':<28} {p**s - 1:>12,} elems  numba {t_nb:8.3f} s  numpy {t_np:8.3f} s  x{t_np / t_nb:6.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    print(f"default backend: {_kernels.backend()}")
    for label, (q, n, r) in [("C(4,15,3) [15,6]", (4, 15, 3)), ("C(3,26,2) [26,6]", (3, 26, 2)),
                             ("C(2,73,1) [73,9]", (2, 73, 1)), ("C(3,23,2) [23,11]", (3, 23, 2)),
                             ("C(5,19,4) [19,9]", (5, 19, 4)), ("C(2,127,1) [127,7]", (2, 127, 1)),
                             ("C(16,51,15) [51,6]", (16, 51, 15))]:
        bench_histogram(label, cc.build_C(cc.spec_create(q, n, r)), a.repeat)
    for p, s in [(2, 16), (3, 10), (7, 6)]:
        bench_antilog(p, s, a.repeat)


if __name__ == "__main__":
    main()

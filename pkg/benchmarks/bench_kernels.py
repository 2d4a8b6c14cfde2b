"""Time the numba and numpy kernels on the two hot loops.

    python benchmarks/bench_kernels.py [--repeat 3]

Results from both backends are compared before timing is reported.
"""
import argparse
import time

import numpy as np

from kseeker import _kernels
from kseeker.fields import make_field

CASES = [(11, 3), (13, 3), (11, 4), (3, 10)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rows", type=int, default=64, help="shifts per histogram call")
    args = ap.parse_args()
    if _kernels.NUMBA_KERNELS is None:
        raise SystemExit("numba is not installed; nothing to compare")

    # compile outside the timed region
    fs = make_field(3, 2)
    _kernels.NUMBA_KERNELS["exp_table"](fs.mulmat, 3, 9)
    _kernels.NUMBA_KERNELS["pair_histograms"](np.zeros(8, dtype=np.int64), np.zeros(8, dtype=np.int64),
                                              np.zeros(1, dtype=np.int64), 3)

    print(f"{'field':>10} {'kernel':>16} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for p, m in CASES:
        fs = make_field(p, m)
        n = fs.order
        a = fs.trace_by_log[(-np.arange(n)) % n]
        shifts = np.linspace(0, n - 1, args.rows).astype(np.int64)
        jobs = {
            "exp_table": lambda k: _kernels.__dict__[k]["exp_table"](fs.mulmat, p, fs.q),
            "pair_histograms": lambda k: _kernels.__dict__[k]["pair_histograms"](a, fs.trace_by_log, shifts, p),
        }
        for name, job in jobs.items():
            t_np, r_np = best_of(lambda: job("NUMPY_KERNELS"), args.repeat)
            t_nb, r_nb = best_of(lambda: job("NUMBA_KERNELS"), args.repeat)
            assert np.array_equal(r_np, r_nb), f"backends disagree on {name} for F_{p}^{m}"
            print(f"{f'{p}^{m}':>10} {name:>16} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()

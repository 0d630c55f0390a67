"""Compiled vs pure-NumPy Sturm bisection on the radial operator matrix.

Builds the tridiagonal u-form operator for the d = 1 potential at several
grid sizes, times bisect_lowest from both backends on identical inputs,
and checks that the eigenvalues agree to the bisection tolerance.

Run:  python3 benchmarks/bench_tridiag.py
"""

import time

import numpy as np

from relhur import potential_v
from relhur import _tridiag_py as pure

try:
    from relhur import _tridiag as compiled
except ImportError:
    compiled = None

TOL = 1e-10
REPEATS = 3


def build_problem(n, q_max=10.0, d=1.0):
    h = q_max / (n + 1)
    q = np.arange(1, n + 1) * h
    diag = 2.0 / h ** 2 + np.array([potential_v(float(x), d) for x in q])
    off2 = np.full(n - 1, (1.0 / h ** 2) ** 2)
    lo = float(diag.min() - 2.0 / h ** 2)
    hi = float(diag.max() + 2.0 / h ** 2)
    return diag, off2, lo, hi


def best_time(fn, *args):
    best = float("inf")
    value = None
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    print(f"{'n':>7} {'compiled[s]':>12} {'pure[s]':>10} {'speedup':>8} "
          f"{'agreement':>12}")
    for n in (2000, 8000, 20000):
        diag, off2, lo, hi = build_problem(n)
        lam_py, t_py = best_time(pure.bisect_lowest, diag, off2, lo, hi, TOL)
        if compiled is None:
            print(f"{n:>7} {'missing':>12} {t_py:>10.4f} {'':>8} "
                  f"{'(pure only)':>12}")
            continue
        lam_c, t_c = best_time(compiled.bisect_lowest, diag, off2, lo, hi, TOL)
        gap = abs(lam_c - lam_py)
        print(f"{n:>7} {t_c:>12.4f} {t_py:>10.4f} {t_py / t_c:>8.1f} "
              f"{gap:>12.2e}")
        assert gap <= 10.0 * TOL, "backends disagree beyond tolerance"


if __name__ == "__main__":
    main()

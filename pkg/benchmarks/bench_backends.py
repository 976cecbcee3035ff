"""Compare the compiled kernels against their pure-numpy fallbacks.

Times the principal-minor scan and the support enumeration scan on random
dense instances.  The compiled path is exercised directly (when numba is
importable) alongside the vectorized numpy path, so one run reports both
regardless of the NETGAMES_NO_NUMBA setting.

Usage: python benchmarks/bench_backends.py [--sizes 8 10 12] [--repeats 7]
"""

import argparse
import statistics
import time

import numpy as np

from netgames._accel import HAS_NUMBA
from netgames._kernels import (
    TOL_PIV,
    _minor_scan_np,
    _support_scan_np,
)
from netgames.matclass import det_eps

if HAS_NUMBA:
    from netgames._kernels import _minor_scan_seq, _support_scan_seq


def _instances(sizes, seed=0):
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
    out = []
    for n in sizes:
        g = rng.uniform(-0.9, 0.9, size=(n, n)) / n
        np.fill_diagonal(g, 0.0)
        m = np.eye(n) + g
        b = -rng.uniform(0.1, 1.0, size=n)
        out.append((n, m, b))
    return out


def _median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    rows = []
    for n, m, b in _instances(args.sizes):
        eps = det_eps(m)
        entry = {"n": n}
        entry["minors numpy"] = _median_time(
            lambda: _minor_scan_np(m, eps), args.repeats
        )
        entry["supports numpy"] = _median_time(
            lambda: _support_scan_np(m, b, 1e-8, TOL_PIV, 4096), args.repeats
        )
        if HAS_NUMBA:
            _minor_scan_seq(m, eps)  # compile outside the timed region
            _support_scan_seq(m, b, 1e-8, TOL_PIV, 4096)
            entry["minors numba"] = _median_time(
                lambda: _minor_scan_seq(m, eps), args.repeats
            )
            entry["supports numba"] = _median_time(
                lambda: _support_scan_seq(m, b, 1e-8, TOL_PIV, 4096), args.repeats
            )
        rows.append(entry)

    cols = list(rows[0].keys())
    print("  ".join(f"{c:>16}" for c in cols))
    for entry in rows:
        cells = []
        for c in cols:
            v = entry[c]
            cells.append(f"{v:>16}" if c == "n" else f"{v * 1e3:>14.3f}ms")
        print("  ".join(cells))
    if HAS_NUMBA:
        for entry in rows:
            ratio_m = entry["minors numpy"] / entry["minors numba"]
            ratio_s = entry["supports numpy"] / entry["supports numba"]
            print(
                f"n={entry['n']}: compiled is {ratio_m:.1f}x (minors), "
                f"{ratio_s:.1f}x (supports) vs numpy"
            )
    else:
        print("numba not importable; only the fallback path was timed")


if __name__ == "__main__":
    main()

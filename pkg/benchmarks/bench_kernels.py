"""Time the numba and pure-numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--max-m 18]

The numba functions are compiled once before timing.
"""

import argparse
import time

import numpy as np

from extlip import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def vertex_cases(max_m, rng):
    for m in range(8, max_m + 1, 2):
        yield m, rng.integers(-1, 2, size=(6, m)).astype(float), rng.uniform(0.5, 2.0, size=m)


def pair_cases(rng):
    for n in (50, 200, 800):
        pts = rng.normal(size=(n, 3))
        den = np.linalg.norm(pts[:, None] - pts[None], axis=-1) + np.eye(n)
        yield n, np.abs(rng.normal(size=(n, n))), den


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-m", type=int, default=18)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba backend unavailable (not installed or EXTLIP_DISABLE_NUMBA set); timing numpy only")
    rng = np.random.default_rng(0)

    print(f"{'kernel':<16}{'size':>8}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for m, A, r in vertex_cases(args.max_m, rng):
        for p in (1.0, np.inf):
            t_np, a = best_of(lambda: _kernels.vertex_sup_numpy(A, r, p), args.repeat)
            row = f"{'vertex_sup p=' + ('inf' if np.isinf(p) else '1'):<16}{2**m:>8}{t_np * 1e3:>14.3f}"
            if _kernels.HAVE_NUMBA:
                _kernels.vertex_sup_numba(A, r, p)
                t_nb, b = best_of(lambda: _kernels.vertex_sup_numba(A, r, p), args.repeat)
                assert abs(a[0] - b[0]) <= 1e-9 * max(1.0, abs(a[0])) and a[1] == b[1]
                row += f"{t_nb * 1e3:>14.3f}{t_np / t_nb:>9.1f}x"
            print(row)

    for n, num, den in pair_cases(rng):
        t_np, a = best_of(lambda: _kernels.pair_ratio_max_numpy(num, den), args.repeat)
        row = f"{'pair_ratio_max':<16}{n:>8}{t_np * 1e3:>14.3f}"
        if _kernels.HAVE_NUMBA:
            _kernels.pair_ratio_max_numba(num, den)
            t_nb, b = best_of(lambda: _kernels.pair_ratio_max_numba(num, den), args.repeat)
            assert a == b
            row += f"{t_nb * 1e3:>14.3f}{t_np / t_nb:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

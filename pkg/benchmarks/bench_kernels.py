"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import time

import numpy as np

from polyifs import IfsParams, kernels
from polyifs.core import power_table


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(depth, hull_points, steps):
    p = IfsParams.parse(5, 0.4, "1/4")
    table = power_table(p, depth)
    pts = kernels.cloud_points(table, backend="python")
    rng = np.random.default_rng(0)
    extra = rng.normal(size=hull_points) + 1j * rng.normal(size=hull_points)
    pts = np.concatenate([pts, extra])
    return {
        f"cloud_points (5^{depth})": lambda b: kernels.cloud_points(table, backend=b),
        f"hull_indices ({len(pts)} pts)": lambda b: kernels.hull_indices(pts.real, pts.imag, backend=b),
        f"float_choices ({steps} steps)": lambda b: kernels.float_choices(
            5, 0.6180339887, 0.1, 0, steps, 1e-12, backend=b
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--hull-points", type=int, default=500_000)
    ap.add_argument("--steps", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(kernels.BACKENDS)
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':32s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in cases(args.depth, args.hull_points, args.steps).items():
        t = {n: best_of(lambda: fn(n), args.repeat) for n in names}
        speed = f"{t['python'] / t['cython']:9.1f}x" if "cython" in t else "       n/a"
        print(f"{label:32s}" + "".join(f"{t[n]:11.4f}s" for n in names) + speed)


if __name__ == "__main__":
    main()

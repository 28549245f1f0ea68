"""Compare the compiled and numpy kernels on the workloads the package runs.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from infowidth import _pykernels as py

try:
    from infowidth import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(rng: np.random.Generator):
    def batch(n, k, rows):
        keys = rng.random((rows, 1 << n))
        return np.argpartition(keys, k - 1, axis=1)[:, :k].astype(np.int64)

    b10 = batch(10, 64, 2000)
    b10s = batch(10, 10, 8192)
    b16 = batch(16, 256, 20)
    return [
        ("enumerate_dims n=4 (65535 classes)", lambda m: m.enumerate_dims(4)),
        ("shatters_any d=2, n=10, k=64, 2000 rows", lambda m: m.shatters_any(b10, 10, 2)),
        ("l_dims n=10, k=10, 8192 rows", lambda m: m.l_dims(b10s, 10)),
        ("vc_dims n=10, k=64, 2000 rows", lambda m: m.vc_dims(b10, 10)),
        ("vc_dims n=16, k=256, 20 rows", lambda m: m.vc_dims(b16, 16)),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'workload':45s} {'numpy [s]':>10s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, fn in workloads(rng):
        t_py = _best(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:45s} {t_py:10.4f} {'n/a':>11s} {'':>8s}")
            continue
        t_cy = _best(lambda: fn(cy), args.repeat)
        print(f"{name:45s} {t_py:10.4f} {t_cy:11.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()

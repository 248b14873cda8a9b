"""Benchmark the compiled kernel backend against the numpy fallback.

Swaps the backend functions on twistlab._kernels in place, so both paths
run the exact same high-level code (Luxemburg bisection, dual norms,
conjugates). Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from twistlab import _kernels
from twistlab._kernels import pure
from twistlab.orlicz import conjugate_eval, dual_norm, luxemburg_norm, orlicz_f
from twistlab.sequences import safe_xlog

_KERNEL_NAMES = (
    "xlog_power",
    "orlicz_values",
    "orlicz_deriv",
    "orlicz_gauge_sum",
    "legendre_conjugate",
)


def _use(backend):
    for name in _KERNEL_NAMES:
        setattr(_kernels, name, getattr(backend, name))


def _workloads():
    f = orlicz_f()
    x4096 = np.arange(1, 4097, dtype=np.float64) ** -0.75
    y2048 = np.arange(1, 2049, dtype=np.float64) ** -0.6
    s = np.linspace(0.0, 4.0, 100_000)
    big = np.random.default_rng(0).standard_normal(1_000_000)
    return [
        ("luxemburg_norm f, dim 4096", lambda: luxemburg_norm(f, x4096)),
        ("dual_norm f, dim 2048", lambda: dual_norm(f, y2048)),
        ("conjugate f, 1e5 points", lambda: conjugate_eval(f, s)),
        ("safe_xlog, 1e6 points", lambda: safe_xlog(big, 2, 1.3)),
    ]


def _time(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    try:
        from twistlab._kernels import _fast
    except ImportError:
        _fast = None

    print(f"default backend: {_kernels.BACKEND}")
    rows = []
    for name, fn in _workloads():
        _use(pure)
        ref = fn()
        t_pure = _time(fn, args.repeats)
        if _fast is not None:
            _use(_fast)
            got = fn()
            t_fast = _time(fn, args.repeats)
            close = np.allclose(ref, got, rtol=1e-8)
            rows.append((name, t_pure, t_fast, t_pure / t_fast, close))
        else:
            rows.append((name, t_pure, None, None, True))
    _use(_fast if _fast is not None else pure)

    header = f"{'workload':34s} {'pure ms':>10s} {'compiled ms':>12s} {'speedup':>8s}  agree"
    print(header)
    print("-" * len(header))
    for name, t_pure, t_fast, speedup, close in rows:
        if t_fast is None:
            print(f"{name:34s} {t_pure:10.2f} {'n/a':>12s} {'n/a':>8s}  {close}")
        else:
            print(f"{name:34s} {t_pure:10.2f} {t_fast:12.2f} {speedup:7.1f}x  {close}")


if __name__ == "__main__":
    main()

"""Compare the compiled and numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the tridiagonal RK4 propagator (the inner loop of the Berry-phase
extraction) and the Laguerre recurrence on both backends, and checks that
they return the same numbers.
"""
import argparse
import timeit

import numpy as np

from ndpa import _kernels_py

try:
    from ndpa import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def rk4_case(dim, steps):
    k0 = 0.5 + np.arange(dim, dtype=float)
    kp = np.arange(1, dim, dtype=float)
    n = 2 * steps + 1
    t = np.linspace(0, 1, n)
    omega = np.full(n, 2.0)
    shift = np.full(n, -1.0)
    coupling = 0.6 * np.exp(-2j * np.pi * t)
    psi0 = np.zeros(dim, complex)
    psi0[0] = 1.0
    return (psi0, k0, kp, omega, shift, coupling, 1.0 / steps, 50)


def laguerre_case(n, points):
    return (n, 1.0, np.linspace(0, 40, points))


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; only the numpy backend can be timed")
    cases = [
        ("rk4_tridiag dim=41 steps=20000", "rk4_tridiag", rk4_case(41, 20000)),
        ("rk4_tridiag dim=121 steps=5000", "rk4_tridiag", rk4_case(121, 5000)),
        ("laguerre n=30 x=10000", "laguerre_recurrence", laguerre_case(30, 10000)),
    ]
    print(f"{'case':34s} {'numpy [s]':>10s} {'cython [s]':>11s} {'speed-up':>9s} {'rel diff':>9s}")
    for label, name, args in cases:
        t_py = bench(getattr(_kernels_py, name), args, opts.repeat)
        if _ckernels is None:
            print(f"{label:34s} {t_py:10.4f}")
            continue
        t_c = bench(getattr(_ckernels, name), args, opts.repeat)
        a, b = getattr(_kernels_py, name)(*args), getattr(_ckernels, name)(*args)
        if isinstance(a, tuple):
            a, b = a[1], b[1]
        diff = float(np.max(np.abs(a - b)) / np.max(np.abs(a)))
        print(f"{label:34s} {t_py:10.4f} {t_c:11.4f} {t_py / t_c:8.1f}x {diff:9.1e}")


if __name__ == "__main__":
    main()

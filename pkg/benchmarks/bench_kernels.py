"""Compare the compiled and pure-Python subset scans.

Usage: python benchmarks/bench_kernels.py [--sizes 8 12 16] [--repeat 3]
"""
import argparse
import random
import timeit

from metricdiv import _kernels_py

try:
    from metricdiv import _kernels
except ImportError:
    _kernels = None


def random_instance(rng, n):
    m = n + rng.randint(0, n)
    weights = [rng.randint(0, 2) for _ in range(n)]
    tails = [rng.randrange(n) for _ in range(m)]
    heads = [rng.randrange(n) for _ in range(m)]
    return n, weights, tails, heads


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 14, 16])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>3} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in args.sizes:
        inst = random_instance(rng, n)
        py = min(timeit.repeat(lambda: _kernels_py.scan_error_objective(*inst), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{n:>3} {py:>12.4f} {'n/a':>12} {'':>8}")
            continue
        assert _kernels.scan_error_objective(*inst) == _kernels_py.scan_error_objective(*inst)
        cy = min(timeit.repeat(lambda: _kernels.scan_error_objective(*inst), number=1, repeat=args.repeat))
        print(f"{n:>3} {py:>12.4f} {cy:>12.6f} {py / cy:>7.0f}x")


if __name__ == "__main__":
    main()

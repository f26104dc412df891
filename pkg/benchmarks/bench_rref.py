"""Compare the compiled row-reduction kernel against the pure-Python twin.

Run from the repository root:
    python3 benchmarks/bench_rref.py [--size 60] [--reps 3]
The compiled kernel must be built (pip install -e .); results are checked
for bit-identity while timing.
"""

import argparse
import time
from fractions import Fraction

from cyfold import _rowreduce_py
from cyfold.exactlin import SplitMix64

try:
    from cyfold import _rowreduce_c
except ImportError:
    _rowreduce_c = None


def random_frac_matrix(rng, rows, cols):
    return [
        [Fraction(rng.int_in(-30, 30), rng.int_in(1, 7)) for _ in range(cols)]
        for _ in range(rows)
    ]


def random_int_matrix(rng, rows, cols, p):
    return [[rng.int_in(0, p - 1) for _ in range(cols)] for _ in range(rows)]


def bench(fn, matrices, reps):
    best = None
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = [fn(m) for m in matrices]
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=60)
    parser.add_argument("--count", type=int, default=8)
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args()
    rng = SplitMix64(42)
    fracs = [random_frac_matrix(rng, args.size, args.size) for _ in range(args.count)]
    ints = [random_int_matrix(rng, args.size, args.size, 10007) for _ in range(args.count)]
    print(f"rref over Q        ({args.count} x {args.size}x{args.size})")
    t_py, out_py = bench(_rowreduce_py.rref_frac, fracs, args.reps)
    print(f"  python : {t_py:8.3f}s")
    if _rowreduce_c is not None:
        t_c, out_c = bench(_rowreduce_c.rref_frac, fracs, args.reps)
        same = out_c == out_py
        print(f"  cython : {t_c:8.3f}s   speedup x{t_py / t_c:4.2f}   bit-identical: {same}")
    print(f"rref over GF(10007) ({args.count} x {args.size}x{args.size})")
    t_py, out_py = bench(lambda m: _rowreduce_py.rref_modp(m, 10007), ints, args.reps)
    print(f"  python : {t_py:8.3f}s")
    if _rowreduce_c is not None:
        t_c, out_c = bench(lambda m: _rowreduce_c.rref_modp(m, 10007), ints, args.reps)
        same = out_c == out_py
        print(f"  cython : {t_c:8.3f}s   speedup x{t_py / t_c:4.2f}   bit-identical: {same}")
    if _rowreduce_c is None:
        print("compiled kernel not built; install with `pip install -e .` and a C toolchain")


if __name__ == "__main__":
    main()

"""Time the compiled and pure-Python kernels on the full spectrum.

    python benchmarks/bench_kernel.py --sizes 1000 10000 100000
"""

import argparse
import random
import time

from infometer import _pure

try:
    from infometer import _kernel
except ImportError:
    _kernel = None


def time_full_spectrum(kernel, codes, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        prep = kernel.prepare(codes)
        result = kernel.spectrum_range(prep, 1, len(codes) // 2 + 1)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    parser.add_argument("--alphabet", type=int, default=2)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    kernels = [("pure", _pure)]
    if _kernel is not None:
        kernels.insert(0, ("compiled", _kernel))
    else:
        print("compiled kernel not built; timing the pure kernel only")

    print(f"{'n':>10} {'kernel':>9} {'seconds':>10} {'speedup':>8}")
    for n in args.sizes:
        rng = random.Random(args.seed)
        codes = [rng.randrange(args.alphabet) for _ in range(n)]
        rows = [(name, *time_full_spectrum(k, codes, args.repeat)) for name, k in kernels]
        slowest = max(t for _, t, _ in rows)
        for name, t, _ in rows:
            print(f"{n:>10} {name:>9} {t:>10.4f} {slowest / t:>7.1f}x")
        if len(rows) == 2:
            assert rows[0][2] == rows[1][2], "kernels disagree"


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python sparse polynomial multiplication.

    python3 benchmarks/bench_kernels.py [--terms 40 80 160] [--repeat 5]

Both kernels receive identical random inputs; the script checks that their
products agree before timing them.
"""

import argparse
import random
import timeit

from torusindex import _kernels_py

try:
    from torusindex import _kernels
except ImportError:
    _kernels = None


def random_poly(rng, terms, span=6, coeff=50):
    out = {}
    while len(out) < terms:
        exps = [rng.randint(-span, span) for _ in range(4)]
        c = (rng.randint(-coeff, coeff), rng.randint(-coeff, coeff))
        if c != (0, 0):
            out[_kernels_py.pack(exps)] = c
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, nargs="+", default=[20, 80, 320])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernel not built; only the fallback is available")
        return 1
    rng = random.Random(args.seed)
    print(f"{'terms':>6} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for n in args.terms:
        a, b = random_poly(rng, n), random_poly(rng, n)
        if _kernels.mul(a, b) != _kernels_py.mul(a, b):
            raise SystemExit(f"kernels disagree at {n} terms")
        number = max(1, 20000 // (n * n))
        tp = min(timeit.repeat(lambda: _kernels_py.mul(a, b), number=number, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: _kernels.mul(a, b), number=number, repeat=args.repeat))
        tp, tc = 1e3 * tp / number, 1e3 * tc / number
        print(f"{n:>6} {tp:>12.3f} {tc:>12.3f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

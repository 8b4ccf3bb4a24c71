"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]
"""

import argparse
import random
import timeit

from agrarian._kernels import _pykernels

try:
    from agrarian._kernels import _ckernels
except ImportError:
    _ckernels = None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    n = args.size
    rows = [[rng.randint(-10**6, 10**6) for _ in range(n)] for _ in range(n)]
    exps = [[rng.randint(0, 20) for _ in range(3)] for _ in range(2000)]
    coeffs = [rng.randint(0, _pykernels.PRIME - 1) for _ in exps]
    point = [rng.randint(1, 10**9) for _ in range(3)]
    cases = {
        "det_mod_p": lambda k: k.det_mod_p(rows),
        "rank_mod_p": lambda k: k.rank_mod_p(rows),
        "eval_terms_mod_p": lambda k: k.eval_terms_mod_p(coeffs, exps, point),
    }
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':<18}{'python (ms)':>12}{'cython (ms)':>13}{'speedup':>9}")
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<18}{py:>12.2f}")
            continue
        assert fn(_ckernels) == fn(_pykernels)
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<18}{py:>12.2f}{cy:>13.2f}{py / cy:>8.1f}x")


if __name__ == "__main__":
    main()

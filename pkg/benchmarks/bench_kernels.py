"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Times sparse polynomial products and Bareiss ranks on seeded random inputs,
checks that both implementations agree, and prints a small table.
"""
from __future__ import annotations

import argparse
import random
import sys
import timeit

from qvariety import _kernels_py
from qvariety.harness import grassmannian_point, rand_poly
from qvariety.linalg import integer_rows
from qvariety.generators import grassmannian_polys
from qvariety.regstar import gradient_rows

try:
    from qvariety import _kernels as compiled
except ImportError:
    compiled = None


def mul_cases(rng: random.Random):
    cases = []
    for nvars, degree, terms in [(1, 40, 40), (2, 12, 40), (3, 8, 60), (4, 6, 80)]:
        a = dict(rand_poly(rng, nvars, degree, terms=terms, height=10 ** 4).terms)
        b = dict(rand_poly(rng, nvars, degree, terms=terms, height=10 ** 4).terms)
        cases.append((f"mul n={nvars} deg={degree} terms~{terms}", (a, b, nvars)))
    return cases


def rank_cases(rng: random.Random):
    cases = []
    for n, k in [(3, 1), (4, 2), (5, 2)]:
        A = grassmannian_point(rng, n, k)
        rows = integer_rows(gradient_rows(grassmannian_polys(n, k), A))
        cases.append((f"rank Grassmannian({n},{k}) jacobian", (rows,)))
    for size in (12, 24):
        rows = [[rng.randint(-10 ** 6, 10 ** 6) for _ in range(size)] for _ in range(size)]
        cases.append((f"rank random {size}x{size}", (rows,)))
    return cases


def bench(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; only the pure-Python timings are shown")
    rng = random.Random(args.seed)
    rows = []
    for label, case_args in mul_cases(rng):
        rows.append((label, "mul_terms", case_args))
    for label, case_args in rank_cases(rng):
        rows.append((label, "bareiss_rank", case_args))

    print(f"{'case':<40} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, case_args in rows:
        pure_fn = getattr(_kernels_py, name)
        t_pure = bench(pure_fn, case_args, args.repeat) * 1e3
        if compiled is None:
            print(f"{label:<40} {t_pure:>10.2f} {'-':>10} {'-':>8}")
            continue
        fast_fn = getattr(compiled, name)
        if fast_fn(*case_args) != pure_fn(*case_args):
            print(f"MISMATCH in {label}", file=sys.stderr)
            return 1
        t_fast = bench(fast_fn, case_args, args.repeat) * 1e3
        print(f"{label:<40} {t_pure:>10.2f} {t_fast:>10.2f} {t_pure / t_fast:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

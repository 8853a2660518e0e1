"""Benchmark the compiled elimination kernels against the pure fallback.

Times the two hot loops — row reduction and minimum-labelweight
enumeration — on identical inputs with both backends and prints a small
table with the speedup.  Run from a checkout::

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --rows 200 --cols 240 --q 3 --repeats 5
"""
from __future__ import annotations

import argparse
import time

from lwhss import GF
from lwhss._kernels import backend_name, have_compiled, min_labelweight, row_reduce
from lwhss.rng import CounterRng


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_row_reduce(q: int, rows: int, cols: int, repeats: int, seed: int) -> tuple[float, float]:
    spec = GF(q)
    rng = CounterRng(seed, domain=b"bench.rref")
    data = [rng.next_below(q) for _ in range(rows * cols)]
    tables = spec.tables()

    def compiled():
        row_reduce(list(data), rows, cols, cols, tables)

    def pure():
        row_reduce(list(data), rows, cols, cols, tables, force_pure=True)

    return _time(compiled, repeats), _time(pure, repeats)


def bench_labelweight(q: int, ell: int, s: int, repeats: int, seed: int) -> tuple[float, float]:
    spec = GF(q)
    rng = CounterRng(seed, domain=b"bench.lw")
    n = 2 * s
    gen = [rng.next_below(q) for _ in range(ell * n)]
    labels0 = [i % s for i in range(n)]
    step_diff = [spec.sub_int((v + 1) % q, v) for v in range(q)]
    args = (gen, ell, n, labels0, s, spec.tables(), step_diff, q**ell)

    def compiled():
        min_labelweight(*args)

    def pure():
        min_labelweight(*args, force_pure=True)

    return _time(compiled, repeats), _time(pure, repeats)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, default=2, help="field order (prime power)")
    parser.add_argument("--rows", type=int, default=150, help="row-reduction matrix rows")
    parser.add_argument("--cols", type=int, default=180, help="row-reduction matrix cols")
    parser.add_argument("--ell", type=int, default=14, help="labelweight code dimension")
    parser.add_argument("--servers", type=int, default=7, help="labelweight label count")
    parser.add_argument("--repeats", type=int, default=3, help="take the best of this many runs")
    parser.add_argument("--seed", type=int, default=0, help="input generator seed")
    args = parser.parse_args(argv)

    if not have_compiled():
        print("compiled backend unavailable (LWHSS_PURE set or extension missing);")
        print("timings below compare the pure path against itself")
    print(f"active backend: {backend_name()}")
    print(f"{'kernel':<16} {'input':<24} {'compiled':>12} {'pure':>12} {'speedup':>9}")

    fast, slow = bench_row_reduce(args.q, args.rows, args.cols, args.repeats, args.seed)
    label = f"{args.rows}x{args.cols} over GF({args.q})"
    print(f"{'row_reduce':<16} {label:<24} {fast * 1e3:>10.2f}ms {slow * 1e3:>10.2f}ms {slow / fast:>8.1f}x")

    fast, slow = bench_labelweight(args.q, args.ell, args.servers, args.repeats, args.seed)
    label = f"{args.q}^{args.ell} words, s={args.servers}"
    print(f"{'min_labelweight':<16} {label:<24} {fast * 1e3:>10.2f}ms {slow * 1e3:>10.2f}ms {slow / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

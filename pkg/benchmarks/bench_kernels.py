"""Compare the compiled kernels against their fallbacks.

    python3 benchmarks/bench_kernels.py --repeat 3

The first compiled call pays the JIT (or cache load) cost, so it is
excluded with a warm-up run.
"""

import argparse
import random
import time

import numpy as np

from machcover import _kernels


def bb_cases(seed, count):
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        m = rng.randint(2, 4)
        n = rng.randint(9, 12)
        sizes = sorted((rng.randint(1, 40) for _ in range(n)), reverse=True)
        bids = sorted(rng.randint(1, 6) for _ in range(m))
        cases.append((sizes, bids))
    return cases


def dp_cases(seed, count):
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        m = int(rng.integers(2, 4))
        n = int(rng.integers(4, 9))
        S = 40 if m == 2 else 16
        loads = rng.integers(1, S // 2, size=(n, m))
        cases.append((loads, S))
    return cases


def run_bb(cases, force_python):
    for sizes, bids in cases:
        _kernels.bb_search(sizes, bids, 0, True, force_python)


def run_dp(cases, force_numpy):
    for loads, S in cases:
        _kernels.dp_fill(loads, S, True, force_numpy)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--cases", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if not _kernels.numba_enabled():
        print("numba disabled (MACHCOVER_DISABLE_NUMBA set or numba missing); only the fallback is timed")
    bb = bb_cases(args.seed, args.cases)
    dp = dp_cases(args.seed, args.cases)
    rows = []
    if _kernels.numba_enabled():
        run_bb(bb[:1], False)
        run_dp(dp[:1], False)
        rows.append(("bb_search", "numba", best_of(lambda: run_bb(bb, False), args.repeat)))
    rows.append(("bb_search", "python", best_of(lambda: run_bb(bb, True), args.repeat)))
    if _kernels.numba_enabled():
        rows.append(("dp_fill", "numba", best_of(lambda: run_dp(dp, False), args.repeat)))
    rows.append(("dp_fill", "numpy", best_of(lambda: run_dp(dp, True), args.repeat)))

    print(f"{'kernel':<10} {'path':<8} {'seconds':>9}  ({args.cases} cases, best of {args.repeat})")
    for kernel, path, secs in rows:
        print(f"{kernel:<10} {path:<8} {secs:>9.4f}")
    for kernel in ("bb_search", "dp_fill"):
        t = {path: secs for k, path, secs in rows if k == kernel}
        if len(t) == 2:
            fast, slow = t.get("numba"), t.get("python", t.get("numpy"))
            print(f"{kernel}: compiled path {slow / fast:.1f}x faster")


if __name__ == "__main__":
    main()

"""Crossing kernel benchmark: numba sweep against the pure-numpy fallback.

Both paths are checked for identical output before anything is timed.

    python3 benchmarks/bench_crossings.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from raygraph import _kernels
from raygraph.coding import alpha
from raygraph.graphs import RAY, enumerate_codes
from raygraph.model import realize, shared_model, tighten


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def axis_pairs():
    """alpha_0 against alpha_k, the longest arcs have thousands of faces."""
    out = []
    for k in (5, 6, 7):
        m = shared_model(alpha(0), alpha(k))
        out.append((f"I(alpha0, alpha{k})", m.n, tighten(m, realize(m, alpha(0))).lift,
                    tighten(m, realize(m, alpha(k))).lift))
    return out


def slice_lifts(L, N):
    codes, m = enumerate_codes(RAY, L, N)
    return m.n, [tighten(m, realize(m, c)).lift for c in codes]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or RAYGRAPH_DISABLE_NUMBA set): nothing to compare")
        return

    print(f"{'workload':<28}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name, n, a, b in axis_pairs():
        fast = _kernels.count_crossings(n, a, b, True)  # also compiles
        slow = _kernels.count_crossings(n, a, b, False)
        assert fast == slow, (name, fast, slow)
        tf = best_of(lambda: _kernels.count_crossings(n, a, b, True), args.repeat)
        ts = best_of(lambda: _kernels.count_crossings(n, a, b, False), args.repeat)
        print(f"{name:<28}{tf:>10.4f}{ts:>10.4f}{ts / tf:>8.1f}x")

    n, lifts = slice_lifts(3, 2)
    fast = _kernels.pairwise_crossings(n, lifts, True)
    slow = _kernels.pairwise_crossings(n, lifts, False)
    assert np.array_equal(fast, slow)
    name = f"all pairs, {len(lifts)} rays"
    tf = best_of(lambda: _kernels.pairwise_crossings(n, lifts, True), args.repeat)
    ts = best_of(lambda: _kernels.pairwise_crossings(n, lifts, False), 1)
    print(f"{name:<28}{tf:>10.4f}{ts:>10.4f}{ts / tf:>8.1f}x")


if __name__ == "__main__":
    main()

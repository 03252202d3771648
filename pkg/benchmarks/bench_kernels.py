#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the three hot operations (single committee checks, the
fraction-counting loop, rejection collection plus pairwise distances) on a
mid-size synthetic election and prints a speedup table. Both backends use
identical RNG streams, so the measured work is identical; only the
implementation differs.

    python benchmarks/bench_kernels.py [--n 150] [--m 50] [--k 10] [--draws 20000]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from propcom import gen_resampling
from propcom._kernel import pure
from propcom.rng import SplitMix64

try:
    from propcom._kernel import _fast as fast
except ImportError:
    fast = None


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - start, result


def bench(backend, election, draws, collect):
    handle = backend.prepare(election.n, election.m, election.k, election.ballots)
    gen = SplitMix64(7)
    committees = [gen.sample_committee(election.m, election.k) for _ in range(500)]

    t_check, _ = timed(
        lambda: [backend.check(handle, w, election.k) for w in committees]
    )
    t_count, counted = timed(
        lambda: backend.count_satisfying(handle, 1, draws, 123456789)
    )
    t_collect, (_, used, accepted) = timed(
        lambda: backend.collect_satisfying(handle, 1, collect, draws * 10, 42)
    )
    t_dist, total = timed(lambda: backend.pairwise_distance_total(accepted, election.m))
    return {
        "check(500)": t_check,
        f"count_satisfying({draws})": t_count,
        f"collect_satisfying({collect})": t_collect,
        f"pairwise_distance({len(accepted)})": t_dist,
        "_verify": (counted, used, total),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=150)
    parser.add_argument("--m", type=int, default=50)
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--draws", type=int, default=20000)
    parser.add_argument("--collect", type=int, default=1000)
    args = parser.parse_args()

    election = gen_resampling(
        args.n, args.m, args.k, Fraction(3, 10), Fraction(8, 10), seed=1
    )
    print(f"election: n={election.n} m={election.m} k={election.k}")

    rows = {"pure": bench(pure, election, args.draws, args.collect)}
    if fast is None:
        print("compiled kernel not built (python setup.py build_ext --inplace)")
    else:
        rows["fast"] = bench(fast, election, args.draws, args.collect)
        assert rows["fast"]["_verify"] == rows["pure"]["_verify"], "backends diverged"

    operations = [op for op in rows["pure"] if not op.startswith("_")]
    width = max(len(op) for op in operations)
    header = f"{'operation':<{width}}  {'pure [s]':>10}"
    if fast is not None:
        header += f"  {'fast [s]':>10}  {'speedup':>8}"
    print(header)
    for op in operations:
        line = f"{op:<{width}}  {rows['pure'][op]:>10.4f}"
        if fast is not None:
            speedup = rows["pure"][op] / rows["fast"][op] if rows["fast"][op] else float("inf")
            line += f"  {rows['fast'][op]:>10.4f}  {speedup:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

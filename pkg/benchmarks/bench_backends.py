"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py --limit 100000000
    python benchmarks/bench_backends.py --limit 10000000 --witness-limit 1000000

Each backend runs the same full sieve (and optionally the batched witness
search); timings exclude the first call so numba compilation is not counted.
Result hashes must match across backends.
"""
import argparse
import time

import numpy as np

from twinsieve import kernels
from twinsieve.sieve import DEFAULT_SEGMENT_SIZE, SieveConfig, summarize


def time_sieve(limit, segment_size, backend, repeat):
    kernels.mark_segment(1, 1000, backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        summary = summarize(SieveConfig(limit, segment_size, 1, backend))
        best = min(best, time.perf_counter() - t0)
    return best, summary


def time_witness(limit, backend):
    ns = np.arange(1, limit + 1, dtype=np.int64)
    kernels.witness_batch(ns[:100], kernels.SIDE_PLUS, backend)
    t0 = time.perf_counter()
    minus = kernels.witness_batch(ns, kernels.SIDE_MINUS, backend)
    plus = kernels.witness_batch(ns, kernels.SIDE_PLUS, backend)
    return time.perf_counter() - t0, minus, plus


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--limit", type=int, default=10**7)
    parser.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--witness-limit", type=int, default=0,
                        help="also time batched witness search for n <= this (numpy path is O(n^1.5))")
    args = parser.parse_args()

    print(f"sieve limit={args.limit:,} segment_size={args.segment_size:,}")
    digests = {}
    for backend in kernels.MARK_BACKENDS:
        seconds, summary = time_sieve(args.limit, args.segment_size, backend, args.repeat)
        digests[backend] = summary.digest
        print(f"  {backend:6s} {seconds:8.3f}s  {args.limit / seconds:14,.0f} idx/s  "
              f"twins={summary.count:,}  sha256={summary.digest[:16]}")
    if len(set(digests.values())) != 1:
        raise SystemExit("backends disagree")

    if args.witness_limit:
        print(f"witness search n<={args.witness_limit:,}")
        results = {}
        for backend in kernels.WITNESS_BACKENDS:
            seconds, minus, plus = time_witness(args.witness_limit, backend)
            results[backend] = (minus, plus)
            print(f"  {backend:6s} {seconds:8.3f}s")
        first, *rest = results.values()
        for other in rest:
            for a, b in zip(first[0] + first[1], other[0] + other[1]):
                if not np.array_equal(a, b):
                    raise SystemExit("witness backends disagree")


if __name__ == "__main__":
    main()

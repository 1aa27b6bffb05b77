"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import random
from array import array
import timeit

from gmmh import _purepy

try:
    from gmmh import _ckernels
except ImportError:
    _ckernels = None


def workloads(rng):
    n64 = (1 << 64) - 59
    key = array("Q", (rng.randrange(n64) for _ in range(8)))
    msgs = array("Q", (rng.randrange(n64) for _ in range(8 * 20_000)))
    yield "hash_many  n~2^64 k=8 20k msgs", lambda kern: kern.hash_many(key, msgs, n64)
    n32 = 4294967291
    key32 = array("Q", (rng.randrange(n32) for _ in range(8)))
    msgs32 = array("Q", (rng.randrange(n32) for _ in range(8 * 20_000)))
    yield "hash_many  n~2^32 k=8 20k msgs", lambda kern: kern.hash_many(key32, msgs32, n32)
    yield "histogram  n=12 k=3 all keys  ", lambda kern: kern.delta_histogram([5, 0, 7], [1, 2, 3], 12, 0, 1728)
    yield "histogram  n=7 k=6 all keys   ", lambda kern: kern.delta_histogram([1, 2, 3, 4, 5, 6], [0] * 6, 7, 0, 7**6)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _purepy)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'workload':34s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in workloads(random.Random(0)):
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        speedup = f"{times[0] / times[1]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speedup)


if __name__ == "__main__":
    main()

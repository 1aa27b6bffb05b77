"""Pure-Python kernels. Same signatures and results as ``_ckernels``."""

from itertools import islice, product
from operator import mul


def mulmod(a, b, n):
    return a * b % n


def dot_mod(xs, ms, n):
    s = 0
    for x, m in zip(xs, ms):
        s = (s + x * m) % n
    return s


def hash_many(key, msgs, n):
    """Digest of each length-k slice of the flat sequence ``msgs``."""
    k = len(key)
    return [
        sum(map(mul, key, msgs[i : i + k])) % n for i in range(0, len(msgs), k)
    ]


def delta_histogram(m, mp, n, start, stop):
    """counts[d] = #{keys x with index in [start, stop) : m.x - mp.x = d mod n}.

    Keys are indexed lexicographically, x_1 most significant.
    """
    counts = [0] * n
    keys = islice(product(range(n), repeat=len(m)), start, stop)
    for x in keys:
        counts[(sum(map(mul, m, x)) - sum(map(mul, mp, x))) % n] += 1
    return counts

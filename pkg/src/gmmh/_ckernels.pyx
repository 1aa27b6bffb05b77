# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: 64-bit modular dot products and key enumeration."""

from cpython cimport array
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

import array as _array

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t gm_mulmod(uint64_t a, uint64_t b, uint64_t n) {
        if (n <= 0xFFFFFFFFULL) return (a * b) % n;
        return (uint64_t)(((unsigned __int128)a * b) % n);
    }
    /* a, b < n */
    static inline uint64_t gm_addmod(uint64_t a, uint64_t b, uint64_t n) {
        return a >= n - b ? a - (n - b) : a + b;
    }
    """
    uint64_t gm_mulmod(uint64_t a, uint64_t b, uint64_t n) nogil
    uint64_t gm_addmod(uint64_t a, uint64_t b, uint64_t n) nogil


cdef array.array _U64 = _array.array("Q")


cdef inline uint64_t _dot(const uint64_t* x, const uint64_t* m,
                          Py_ssize_t k, uint64_t n) noexcept nogil:
    cdef uint64_t s = 0
    cdef Py_ssize_t i
    for i in range(k):
        s = gm_addmod(s, gm_mulmod(x[i], m[i], n), n)
    return s


cdef array.array _as_u64(object seq):
    if isinstance(seq, _array.array) and seq.typecode == "Q":
        return seq
    return _array.array("Q", seq)


def mulmod(uint64_t a, uint64_t b, uint64_t n):
    return gm_mulmod(a, b, n)


def dot_mod(xs, ms, uint64_t n):
    cdef array.array ax = _as_u64(xs)
    cdef array.array am = _as_u64(ms)
    cdef Py_ssize_t k = min(len(ax), len(am))
    return _dot(ax.data.as_ulonglongs, am.data.as_ulonglongs, k, n)


def hash_many(key, msgs, uint64_t n):
    """Digest of each length-k slice of the flat sequence ``msgs``."""
    cdef array.array ak = _as_u64(key)
    cdef array.array am = _as_u64(msgs)
    cdef Py_ssize_t k = len(ak)
    cdef Py_ssize_t count = len(am) // k
    cdef array.array out = array.clone(_U64, count, zero=False)
    cdef uint64_t* o = out.data.as_ulonglongs
    cdef const uint64_t* kp = ak.data.as_ulonglongs
    cdef const uint64_t* mp = am.data.as_ulonglongs
    cdef Py_ssize_t j
    with nogil:
        for j in range(count):
            o[j] = _dot(kp, mp + j * k, k, n)
    return out


def delta_histogram(m, mp, uint64_t n, uint64_t start, uint64_t stop):
    """counts[d] = #{keys x with index in [start, stop) : m.x - mp.x = d mod n}.

    Keys are indexed lexicographically, x_1 most significant.
    """
    cdef array.array am = _as_u64(m)
    cdef array.array amp = _as_u64(mp)
    cdef Py_ssize_t k = len(am)
    cdef array.array counts = array.clone(_U64, n, zero=True)
    cdef uint64_t* c = counts.data.as_ulonglongs
    cdef const uint64_t* pm = am.data.as_ulonglongs
    cdef const uint64_t* pmp = amp.data.as_ulonglongs
    cdef uint64_t* x = <uint64_t*>malloc(k * sizeof(uint64_t))
    if x == NULL:
        raise MemoryError()
    cdef uint64_t idx, rest, u, v
    cdef Py_ssize_t i
    try:
        with nogil:
            rest = start
            for i in range(k - 1, -1, -1):
                x[i] = rest % n
                rest = rest // n
            idx = start
            while idx < stop:
                u = _dot(x, pm, k, n)
                v = _dot(x, pmp, k, n)
                c[gm_addmod(u, (n - v) % n, n)] += 1
                idx += 1
                i = k - 1
                while i >= 0:
                    x[i] += 1
                    if x[i] < n:
                        break
                    x[i] = 0
                    i -= 1
    finally:
        free(x)
    return counts.tolist()

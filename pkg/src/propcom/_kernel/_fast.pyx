# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel: bitset axiom checks and rejection-sampling loops.

Mirrors ``pure.py`` operation for operation, including the SplitMix64
stream and the partial Fisher-Yates draw, so results are bit-identical to
the pure backend. Ballots are packed into 64-bit words over candidates;
approver lists are stored CSR-style.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    static inline int propcom_popcount64(unsigned long long x) { return (int)__popcnt64(x); }
    #else
    static inline int propcom_popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    #endif
    """
    int propcom_popcount64(unsigned long long x) nogil

NAME = "fast"

DEF GOLDEN = 0x9E3779B97F4A7C15


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline uint64_t _next_u64(uint64_t* state) nogil:
    state[0] = state[0] + <uint64_t>GOLDEN
    return _mix64(state[0])


cdef inline uint64_t _randbelow(uint64_t* state, uint64_t bound) nogil:
    # rejection below the largest multiple of bound, as in rng.SplitMix64
    cdef uint64_t threshold = (<uint64_t>0 - bound) % bound
    cdef uint64_t x
    while True:
        x = _next_u64(state)
        if x >= threshold:
            return x % bound


cdef class Handle:
    cdef public int n, m, k, words
    cdef uint64_t[:, ::1] ballots
    cdef int64_t[::1] approver_ptr
    cdef int32_t[::1] approver_idx

    def __init__(self, int n, int m, int k, ballots_obj):
        self.n = n
        self.m = m
        self.k = k
        self.words = (m + 63) >> 6
        packed = np.zeros((n, self.words), dtype=np.uint64)
        counts = np.zeros(m + 1, dtype=np.int64)
        for i, ballot in enumerate(ballots_obj):
            for c in ballot:
                packed[i, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
                counts[c + 1] += 1
        ptr = np.cumsum(counts, dtype=np.int64)
        idx = np.empty(int(ptr[m]), dtype=np.int32)
        cursor = ptr[:-1].copy()
        for i, ballot in enumerate(ballots_obj):
            for c in sorted(ballot):
                idx[cursor[c]] = i
                cursor[c] += 1
        self.ballots = packed
        self.approver_ptr = ptr
        self.approver_idx = idx


def prepare(int n, int m, int k, ballots):
    return Handle(n, m, k, ballots)


cdef bint _satisfies(Handle h, uint64_t* wmask, int t, int64_t* rep, int64_t* hist) nogil:
    cdef int i, c, w, ell
    cdef int64_t n = h.n, k = h.k
    cdef int64_t cum, r, e
    cdef int64_t deg
    for i in range(h.n):
        cum = 0
        for w in range(h.words):
            cum += propcom_popcount64(h.ballots[i, w] & wmask[w])
        rep[i] = cum
    for c in range(h.m):
        if (wmask[c >> 6] >> (c & 63)) & 1:
            continue
        deg = h.approver_ptr[c + 1] - h.approver_ptr[c]
        if deg * k < n:
            continue
        for ell in range(t):
            hist[ell] = 0
        for e in range(h.approver_ptr[c], h.approver_ptr[c + 1]):
            r = rep[h.approver_idx[e]]
            if r < t:
                hist[r] += 1
        cum = 0
        for ell in range(1, t + 1):
            cum += hist[ell - 1]
            if cum * k >= ell * n:
                return False
    return True


cdef void _draw(Handle h, uint64_t* state, int32_t* perm, int32_t* committee) nogil:
    # partial Fisher-Yates over a fresh identity permutation, then an
    # insertion sort of the first k entries; matches SplitMix64.sample_committee
    cdef int j, r, tmp, pos
    cdef int m = h.m, k = h.k
    for j in range(m):
        perm[j] = j
    for j in range(k):
        r = j + <int>_randbelow(state, <uint64_t>(m - j))
        tmp = perm[j]
        perm[j] = perm[r]
        perm[r] = tmp
    for j in range(k):
        tmp = perm[j]
        pos = j
        while pos > 0 and committee[pos - 1] > tmp:
            committee[pos] = committee[pos - 1]
            pos -= 1
        committee[pos] = tmp


cdef inline void _mask_from(int32_t* committee, int size, uint64_t* wmask, int words) nogil:
    cdef int w, j
    for w in range(words):
        wmask[w] = 0
    for j in range(size):
        wmask[committee[j] >> 6] |= (<uint64_t>1) << (committee[j] & 63)


def check(Handle h, committee, int t):
    cdef uint64_t[::1] wmask = np.zeros(h.words, dtype=np.uint64)
    cdef int64_t[::1] rep = np.empty(h.n, dtype=np.int64)
    cdef int64_t[::1] hist = np.empty(h.k + 1, dtype=np.int64)
    cdef int c
    for c in committee:
        wmask[c >> 6] |= (<uint64_t>1) << (c & 63)
    return bool(_satisfies(h, &wmask[0], t, &rep[0], &hist[0]))


def count_satisfying(Handle h, int t, long ndraws, state_obj):
    cdef uint64_t state = <uint64_t>(<object>state_obj & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t[::1] wmask = np.zeros(h.words, dtype=np.uint64)
    cdef int64_t[::1] rep = np.empty(h.n, dtype=np.int64)
    cdef int64_t[::1] hist = np.empty(h.k + 1, dtype=np.int64)
    cdef int32_t[::1] perm = np.empty(h.m, dtype=np.int32)
    cdef int32_t[::1] committee = np.empty(h.k, dtype=np.int32)
    cdef long nsat = 0, it
    with nogil:
        for it in range(ndraws):
            _draw(h, &state, &perm[0], &committee[0])
            _mask_from(&committee[0], h.k, &wmask[0], h.words)
            if _satisfies(h, &wmask[0], t, &rep[0], &hist[0]):
                nsat += 1
    return int(state), int(nsat)


def collect_satisfying(Handle h, int t, long need, long max_draws, state_obj):
    cdef uint64_t state = <uint64_t>(<object>state_obj & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t[::1] wmask = np.zeros(h.words, dtype=np.uint64)
    cdef int64_t[::1] rep = np.empty(h.n, dtype=np.int64)
    cdef int64_t[::1] hist = np.empty(h.k + 1, dtype=np.int64)
    cdef int32_t[::1] perm = np.empty(h.m, dtype=np.int32)
    cdef int32_t[::1] committee = np.empty(h.k, dtype=np.int32)
    out = np.empty((max(need, 0), h.k), dtype=np.int32)
    cdef int32_t[:, ::1] out_view = out
    cdef long draws = 0, found = 0
    cdef int j
    with nogil:
        while found < need and draws < max_draws:
            _draw(h, &state, &perm[0], &committee[0])
            draws += 1
            _mask_from(&committee[0], h.k, &wmask[0], h.words)
            if _satisfies(h, &wmask[0], t, &rep[0], &hist[0]):
                for j in range(h.k):
                    out_view[found, j] = committee[j]
                found += 1
    accepted = [tuple(int(x) for x in row) for row in out[:found]]
    return int(state), int(draws), accepted


def pairwise_distance_total(committees, int m):
    cdef int count = len(committees)
    cdef int words = (m + 63) >> 6
    packed = np.zeros((count, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] view = packed
    cdef int i, j, w, c
    for i, committee in enumerate(committees):
        for c in committee:
            packed[i, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    cdef int64_t total = 0
    with nogil:
        for i in range(count):
            for j in range(i + 1, count):
                for w in range(words):
                    total += propcom_popcount64(view[i, w] & ~view[j, w])
    return int(total)

# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: double-modulus polynomial hashing with exact verification.

Every hash match is confirmed with memcmp before two blocks are treated as
equal, so results are identical to the pure-Python backend.
"""
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcmp, memcpy

BACKEND = "native"

cdef uint64_t P1 = 2147483647
cdef uint64_t P2 = 2147483629
cdef uint64_t B1 = 1000003
cdef uint64_t B2 = 972663749
cdef uint64_t MIX = 0x9E3779B97F4A7C15ULL


cdef inline Py_ssize_t _table_size(Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t t = 16
    while t < 2 * n:
        t <<= 1
    return t


cdef inline Py_ssize_t _slot(uint64_t key, Py_ssize_t mask) noexcept nogil:
    return <Py_ssize_t>((key * MIX) >> 20) & mask


def apply_morphism(const unsigned char[::1] data, images):
    cdef Py_ssize_t nimg = len(images)
    flat = b"".join(images)
    cdef const unsigned char[::1] fl = flat
    cdef Py_ssize_t *lens = <Py_ssize_t *>malloc((nimg + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *offs = <Py_ssize_t *>malloc((nimg + 1) * sizeof(Py_ssize_t))
    if lens == NULL or offs == NULL:
        free(lens)
        free(offs)
        raise MemoryError()
    cdef Py_ssize_t a, j, total = 0, pos = 0, n = data.shape[0]
    try:
        for a in range(nimg):
            lens[a] = len(images[a])
            offs[a] = pos
            pos += lens[a]
        for j in range(n):
            if data[j] >= nimg:
                raise ValueError("letter outside morphism alphabet")
            total += lens[data[j]]
        out = bytearray(total)
        if total:
            _fill(data, &fl[0], lens, offs, out, n)
        return bytes(out)
    finally:
        free(lens)
        free(offs)


cdef void _fill(const unsigned char[::1] data, const unsigned char *fl,
                Py_ssize_t *lens, Py_ssize_t *offs, unsigned char[::1] out,
                Py_ssize_t n) noexcept:
    cdef Py_ssize_t j, pos = 0
    cdef unsigned char c
    for j in range(n):
        c = data[j]
        memcpy(&out[pos], fl + offs[c], lens[c])
        pos += lens[c]


def count_factors(const unsigned char[::1] data, Py_ssize_t n):
    """Exact number of distinct length-n factors."""
    cdef Py_ssize_t N = data.shape[0]
    if n < 1 or n > N:
        raise ValueError("factor length out of range")
    cdef Py_ssize_t windows = N - n + 1
    cdef Py_ssize_t tsize = _table_size(windows), mask = tsize - 1
    cdef int64_t *slots = <int64_t *>malloc(tsize * sizeof(int64_t))
    cdef uint64_t *keys = <uint64_t *>malloc(tsize * sizeof(uint64_t))
    if slots == NULL or keys == NULL:
        free(slots)
        free(keys)
        raise MemoryError()
    cdef const unsigned char *d = &data[0]
    cdef uint64_t h1 = 0, h2 = 0, top1 = 1, top2 = 1, key
    cdef Py_ssize_t j, s, count = 0
    cdef int64_t p
    try:
        for j in range(tsize):
            slots[j] = -1
        for j in range(n - 1):
            top1 = top1 * B1 % P1
            top2 = top2 * B2 % P2
        for j in range(n):
            h1 = (h1 * B1 + d[j] + 1) % P1
            h2 = (h2 * B2 + d[j] + 1) % P2
        j = 0
        while True:
            key = (h1 << 31) | h2
            s = _slot(key, mask)
            while True:
                p = slots[s]
                if p < 0:
                    slots[s] = j
                    keys[s] = key
                    count += 1
                    break
                if keys[s] == key and memcmp(d + p, d + j, n) == 0:
                    break
                s = (s + 1) & mask
            if j + n >= N:
                break
            h1 = (h1 + P1 - (d[j] + 1) * top1 % P1) % P1
            h1 = (h1 * B1 + d[j + n] + 1) % P1
            h2 = (h2 + P2 - (d[j] + 1) * top2 % P2) % P2
            h2 = (h2 * B2 + d[j + n] + 1) % P2
            j += 1
        return count
    finally:
        free(slots)
        free(keys)


cdef class BlockIndex:
    """Prefix-hash index answering block-equality queries in O(k) per window."""

    cdef readonly object data
    cdef const unsigned char[::1] view
    cdef Py_ssize_t n
    cdef uint32_t *h1
    cdef uint32_t *h2
    cdef uint32_t *pw1
    cdef uint32_t *pw2

    backend = BACKEND

    def __cinit__(self, data):
        self.h1 = self.h2 = self.pw1 = self.pw2 = NULL

    def __init__(self, data):
        self.data = bytes(data)
        self.view = self.data
        self.n = len(self.data)
        cdef Py_ssize_t n = self.n, j
        self.h1 = <uint32_t *>malloc((n + 1) * sizeof(uint32_t))
        self.h2 = <uint32_t *>malloc((n + 1) * sizeof(uint32_t))
        self.pw1 = <uint32_t *>malloc((n + 1) * sizeof(uint32_t))
        self.pw2 = <uint32_t *>malloc((n + 1) * sizeof(uint32_t))
        if self.h1 == NULL or self.h2 == NULL or self.pw1 == NULL or self.pw2 == NULL:
            raise MemoryError()
        self.h1[0] = self.h2[0] = 0
        self.pw1[0] = self.pw2[0] = 1
        cdef const unsigned char[::1] v = self.view
        for j in range(n):
            self.h1[j + 1] = <uint32_t>((self.h1[j] * B1 + v[j] + 1) % P1)
            self.h2[j + 1] = <uint32_t>((self.h2[j] * B2 + v[j] + 1) % P2)
            self.pw1[j + 1] = <uint32_t>(self.pw1[j] * B1 % P1)
            self.pw2[j + 1] = <uint32_t>(self.pw2[j] * B2 % P2)

    def __dealloc__(self):
        free(self.h1)
        free(self.h2)
        free(self.pw1)
        free(self.pw2)

    def __len__(self):
        return self.n

    cdef inline uint64_t _key(self, Py_ssize_t a, Py_ssize_t m) noexcept nogil:
        cdef uint64_t x1 = (self.h1[a + m] + P1 - (<uint64_t>self.h1[a] * self.pw1[m]) % P1) % P1
        cdef uint64_t x2 = (self.h2[a + m] + P2 - (<uint64_t>self.h2[a] * self.pw2[m]) % P2) % P2
        return (x1 << 31) | x2

    cdef int _check(self, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k) except -1:
        if start < 0 or m < 1 or k < 1 or start + k * m > self.n:
            raise IndexError("window exceeds indexed data")
        return 0

    cdef Py_ssize_t _scan(self, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k,
                          bint canonical, Py_ssize_t *tab, uint64_t *keys,
                          char *paired, Py_ssize_t tsize, Py_ssize_t *q_out) noexcept nogil:
        # returns smallest p of a duplicate pair (q in q_out), or -1
        cdef Py_ssize_t mask = tsize - 1, q, s, p, best_p = -1, best_q = -1
        cdef uint64_t key
        cdef const unsigned char *d = &self.view[0]
        for s in range(tsize):
            tab[s] = -1
        if canonical:
            for q in range(k):
                paired[q] = 0
        for q in range(k):
            key = self._key(start + q * m, m)
            s = _slot(key, mask)
            while True:
                p = tab[s]
                if p < 0:
                    tab[s] = q
                    keys[s] = key
                    break
                if keys[s] == key and memcmp(d + start + p * m, d + start + q * m, m) == 0:
                    if not canonical:
                        q_out[0] = q
                        return p
                    if not paired[p]:
                        paired[p] = 1
                        if best_p < 0 or p < best_p:
                            best_p = p
                            best_q = q
                    break
                s = (s + 1) & mask
        q_out[0] = best_q
        return best_p

    cdef object _query(self, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k, bint canonical):
        self._check(start, m, k)
        cdef Py_ssize_t tsize = _table_size(k), p, q = -1
        cdef Py_ssize_t *tab = <Py_ssize_t *>malloc(tsize * sizeof(Py_ssize_t))
        cdef uint64_t *keys = <uint64_t *>malloc(tsize * sizeof(uint64_t))
        cdef char *paired = <char *>malloc(k)
        if tab == NULL or keys == NULL or paired == NULL:
            free(tab)
            free(keys)
            free(paired)
            raise MemoryError()
        try:
            with nogil:
                p = self._scan(start, m, k, canonical, tab, keys, paired, tsize, &q)
        finally:
            free(tab)
            free(keys)
            free(paired)
        if p < 0:
            return None
        return (p, q)

    def first_duplicate(self, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k):
        return self._query(start, m, k, True)

    def is_distinct(self, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k):
        return self._query(start, m, k, False) is None

    def gamma(self, Py_ssize_t start, Py_ssize_t k, Py_ssize_t mmax):
        """Smallest m <= mmax whose k blocks at start are pairwise distinct."""
        self._check(start, mmax, k)
        cdef Py_ssize_t tsize = _table_size(k), m, p, q = -1, found = -1
        cdef Py_ssize_t *tab = <Py_ssize_t *>malloc(tsize * sizeof(Py_ssize_t))
        cdef uint64_t *keys = <uint64_t *>malloc(tsize * sizeof(uint64_t))
        if tab == NULL or keys == NULL:
            free(tab)
            free(keys)
            raise MemoryError()
        try:
            with nogil:
                for m in range(1, mmax + 1):
                    p = self._scan(start, m, k, False, tab, keys, NULL, tsize, &q)
                    if p < 0:
                        found = m
                        break
        finally:
            free(tab)
            free(keys)
        return None if found < 0 else found


def first_duplicate(data, Py_ssize_t start, Py_ssize_t m, Py_ssize_t k):
    """Lexicographically smallest pair (p, q) of equal blocks, or None."""
    if start + k * m > len(data):
        raise IndexError("window exceeds data")
    return BlockIndex(data[start:start + k * m]).first_duplicate(0, m, k)

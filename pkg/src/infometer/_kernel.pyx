# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled block-counting kernel.

Blocks are identified by a polynomial hash modulo 2**61 - 1 computed in
O(1) from prefix hashes; equal hashes are confirmed with a full content
comparison before two blocks are counted together.
"""

from libc.stdint cimport uint32_t, uint64_t, int64_t
from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memcmp, memset
from libc.math cimport log2

from array import array

cdef extern from *:
    """
    static inline uint64_t im_mulmod61(uint64_t a, uint64_t b) {
        unsigned __int128 z = (unsigned __int128)a * b;
        uint64_t lo = (uint64_t)(z & (((uint64_t)1 << 61) - 1));
        uint64_t hi = (uint64_t)(z >> 61);
        uint64_t s = lo + hi;
        const uint64_t M = ((uint64_t)1 << 61) - 1;
        return s >= M ? s - M : s;
    }
    static int im_cmp_i64(const void *a, const void *b) {
        int64_t x = *(const int64_t *)a, y = *(const int64_t *)b;
        return (x > y) - (x < y);
    }
    """
    uint64_t im_mulmod61(uint64_t a, uint64_t b) nogil
    int im_cmp_i64(const void *a, const void *b) noexcept nogil

cdef uint64_t MOD = (<uint64_t>1 << 61) - 1
# keep in sync with _pure.BASE
cdef uint64_t BASE = 0x1F3D5B79A2C4E68D % ((<uint64_t>1 << 61) - 1)


cdef class Prepared:
    cdef public Py_ssize_t n
    cdef uint32_t[::1] codes
    cdef uint64_t[::1] prefix

    def __cinit__(self, codes):
        cdef Py_ssize_t i
        cdef uint64_t acc = 0
        buf = array("I", codes)
        self.codes = buf
        self.n = len(buf)
        self.prefix = array("Q", bytes(8 * (self.n + 1)))
        for i in range(self.n):
            acc = im_mulmod61(acc, BASE) + <uint64_t>self.codes[i] + 1
            if acc >= MOD:
                acc -= MOD
            self.prefix[i + 1] = acc


def prepare(codes):
    return Prepared(codes)


cdef uint64_t powmod(uint64_t b, Py_ssize_t e) noexcept nogil:
    cdef uint64_t result = 1
    while e > 0:
        if e & 1:
            result = im_mulmod61(result, b)
        b = im_mulmod61(b, b)
        e >>= 1
    return result


cdef struct Table:
    uint64_t *keys
    int64_t *reps
    int64_t *counts
    Py_ssize_t capacity


cdef int table_init(Table *t, Py_ssize_t capacity) noexcept nogil:
    t.capacity = capacity
    t.keys = <uint64_t *> malloc(capacity * sizeof(uint64_t))
    t.reps = <int64_t *> malloc(capacity * sizeof(int64_t))
    t.counts = <int64_t *> malloc(capacity * sizeof(int64_t))
    if t.keys == NULL or t.reps == NULL or t.counts == NULL:
        return -1
    return 0


cdef void table_free(Table *t) noexcept nogil:
    free(t.keys)
    free(t.reps)
    free(t.counts)


cdef Py_ssize_t table_size_for(Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t size = 16
    while size < 2 * m:
        size <<= 1
    return size


cdef int count_scale(const uint32_t *codes, const uint64_t *prefix,
                     Py_ssize_t n, Py_ssize_t r, Table *t,
                     double *bits_out, int64_t *distinct_out) noexcept nogil:
    cdef Py_ssize_t m = n // r
    cdef Py_ssize_t size = table_size_for(m)
    cdef uint64_t mask = <uint64_t>(size - 1)
    cdef uint64_t pw = powmod(BASE, r)
    cdef uint64_t key, sub
    cdef Py_ssize_t j, lo, slot, distinct = 0
    cdef size_t nbytes = r * sizeof(uint32_t)
    cdef double bits = 0.0
    cdef int64_t f

    memset(t.counts, 0, size * sizeof(int64_t))
    for j in range(m):
        lo = j * r
        sub = im_mulmod61(prefix[lo], pw)
        key = prefix[lo + r] + MOD - sub
        if key >= MOD:
            key -= MOD
        slot = <Py_ssize_t>(key & mask)
        while True:
            if t.counts[slot] == 0:
                t.keys[slot] = key
                t.reps[slot] = j
                t.counts[slot] = 1
                distinct += 1
                break
            if t.keys[slot] == key and memcmp(
                    codes + t.reps[slot] * r, codes + lo, nbytes) == 0:
                t.counts[slot] += 1
                break
            slot = <Py_ssize_t>((<uint64_t>slot + 1) & mask)

    # compact counts in place, then sum ascending to match the pure path
    j = 0
    for slot in range(size):
        if t.counts[slot] != 0:
            t.counts[j] = t.counts[slot]
            j += 1
    qsort(t.counts, distinct, sizeof(int64_t), im_cmp_i64)
    for j in range(distinct):
        f = t.counts[j]
        bits += f * log2(<double>m / <double>f)
    bits_out[0] = bits
    distinct_out[0] = distinct
    return 0


def scale_stats(Prepared prep, Py_ssize_t r):
    """Shannon bits and distinct-block count of the length-``r`` partition."""
    cdef Table t
    cdef double bits
    cdef int64_t distinct
    if r < 1 or r > prep.n:
        raise ValueError(f"invalid scale {r} for length {prep.n}")
    if table_init(&t, table_size_for(prep.n // r)) != 0:
        table_free(&t)
        raise MemoryError()
    with nogil:
        count_scale(&prep.codes[0], &prep.prefix[0], prep.n, r, &t, &bits, &distinct)
    table_free(&t)
    return bits, distinct


def spectrum_range(Prepared prep, Py_ssize_t lo, Py_ssize_t hi):
    """Bits and distinct counts for scales ``lo <= r < hi``."""
    cdef Table t
    cdef Py_ssize_t r, count
    if lo < 1 or hi > prep.n + 1:
        raise ValueError(f"invalid scale range [{lo}, {hi}) for length {prep.n}")
    count = hi - lo if hi > lo else 0
    bits = array("d", bytes(8 * count))
    distinct = array("q", bytes(8 * count))
    if count == 0:
        return list(bits), list(distinct)
    cdef double[::1] bv = bits
    cdef int64_t[::1] dv = distinct
    if table_init(&t, table_size_for(prep.n // lo)) != 0:
        table_free(&t)
        raise MemoryError()
    with nogil:
        for r in range(lo, hi):
            count_scale(&prep.codes[0], &prep.prefix[0], prep.n, r, &t,
                        &bv[r - lo], &dv[r - lo])
    table_free(&t)
    return list(bits), list(distinct)

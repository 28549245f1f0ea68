# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled shattering / agreement kernels.

Same interface as ``_pykernels``; rows of ``classes`` are int64 encodings.
"""

import itertools

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t, uint64_t, int8_t

cnp.import_array()

BACKEND = "cython"


def point_subsets(int n, int d):
    combos = list(itertools.combinations(range(n), d))
    if not combos:
        return np.zeros((0, d), dtype=np.int64)
    return np.asarray(combos, dtype=np.int64).reshape(len(combos), d)


cdef inline int _popcount(uint64_t v) nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


cdef bint _row_shatters(const int64_t* row, Py_ssize_t k, const int64_t[:, ::1] subsets,
                        int d, int64_t* stamp, int64_t* gen) noexcept nogil:
    cdef Py_ssize_t e, j
    cdef int q
    cdef int64_t pat, f
    cdef Py_ssize_t need = (<Py_ssize_t>1) << d
    cdef Py_ssize_t seen
    for e in range(subsets.shape[0]):
        gen[0] += 1
        seen = 0
        for j in range(k):
            f = row[j]
            pat = 0
            for q in range(d):
                pat |= ((f >> subsets[e, q]) & 1) << q
            if stamp[pat] != gen[0]:
                stamp[pat] = gen[0]
                seen += 1
                if seen == need:
                    return True
    return False


def shatters_any(classes, int n, int d):
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] arr = np.ascontiguousarray(classes, dtype=np.int64)
    cdef Py_ssize_t rows = arr.shape[0]
    cdef Py_ssize_t k = arr.shape[1]
    out = np.zeros(rows, dtype=bool)
    if d == 0:
        out[:] = k >= 1
        return out
    if d > n or k < ((<Py_ssize_t>1) << d):
        return out
    cdef int64_t[:, ::1] subsets = point_subsets(n, d)
    cdef cnp.uint8_t[::1] res = out.view(np.uint8)
    cdef int64_t* stamp = <int64_t*>calloc((<size_t>1) << d, sizeof(int64_t))
    if stamp == NULL:
        raise MemoryError()
    cdef int64_t gen = 0
    cdef Py_ssize_t t
    try:
        with nogil:
            for t in range(rows):
                res[t] = _row_shatters(&arr[t, 0], k, subsets, d, stamp, &gen)
    finally:
        free(stamp)
    return out


def vc_dims(classes, int n):
    """VC dimension per row, climbing d until no d-set is shattered."""
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] arr = np.ascontiguousarray(classes, dtype=np.int64)
    cdef Py_ssize_t rows = arr.shape[0]
    cdef Py_ssize_t k = arr.shape[1]
    out = np.zeros(rows, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef int top = 0
    while top < n and ((<Py_ssize_t>1) << (top + 1)) <= k:
        top += 1
    if top == 0:
        return out
    cdef int64_t* stamp = <int64_t*>calloc((<size_t>1) << top, sizeof(int64_t))
    if stamp == NULL:
        raise MemoryError()
    cdef int64_t gen = 0
    cdef int d
    cdef Py_ssize_t t
    tables = [point_subsets(n, dd) for dd in range(top + 1)]
    cdef int64_t[:, ::1] subsets
    try:
        for d in range(1, top + 1):
            subsets = tables[d]
            with nogil:
                for t in range(rows):
                    if res[t] == d - 1 and _row_shatters(&arr[t, 0], k, subsets, d, stamp, &gen):
                        res[t] = d
    finally:
        free(stamp)
    return out


def l_dims(classes, int n):
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] arr = np.ascontiguousarray(classes, dtype=np.int64)
    cdef Py_ssize_t rows = arr.shape[0]
    cdef Py_ssize_t k = arr.shape[1]
    out = np.zeros(rows, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t ones, zeros, f
    cdef Py_ssize_t t, j
    with nogil:
        for t in range(rows):
            ones = full
            zeros = full
            for j in range(k):
                f = <uint64_t>arr[t, j]
                ones &= f
                zeros &= ~f & full
            res[t] = _popcount(ones | zeros)
    return out


def enumerate_dims(int n):
    """VC and L dimension of every class, indexed by member bitmask (index 0 -> -1).

    For each point set E the trace of every class is built by doubling: the
    classes with masks in [2^j, 2^(j+1)) add function j to the classes below.
    """
    cdef Py_ssize_t nfunc = (<Py_ssize_t>1) << n
    cdef Py_ssize_t nclass = (<Py_ssize_t>1) << nfunc
    vc_arr = np.zeros(nclass, dtype=np.int8)
    ld_arr = np.zeros(nclass, dtype=np.int8)
    trace_arr = np.zeros(nclass, dtype=np.uint64)
    cdef int8_t[::1] vc = vc_arr
    cdef int8_t[::1] ld = ld_arr
    cdef uint64_t[::1] tr = trace_arr
    cdef int64_t restr[16]
    cdef Py_ssize_t emask, j, lo, c
    cdef int q, pos, size
    cdef uint64_t full, bit, v
    with nogil:
        for emask in range((<Py_ssize_t>1) << n):
            size = 0
            for j in range(nfunc):
                restr[j] = 0
            for pos in range(n):
                if (emask >> pos) & 1:
                    for j in range(nfunc):
                        restr[j] |= ((j >> pos) & 1) << size
                    size += 1
            full = ((<uint64_t>1) << ((<Py_ssize_t>1) << size)) - 1 if size < 6 else <uint64_t>0xFFFFFFFFFFFFFFFF
            tr[0] = 0
            for j in range(nfunc):
                lo = (<Py_ssize_t>1) << j
                bit = (<uint64_t>1) << restr[j]
                for c in range(lo):
                    tr[lo + c] = tr[c] | bit
            for c in range(1, nclass):
                v = tr[c]
                if v == full and vc[c] < size:
                    vc[c] = size
                if (v & (v - 1)) == 0 and ld[c] < size:
                    ld[c] = size
    vc[0] = -1
    ld[0] = -1
    return vc_arr, ld_arr

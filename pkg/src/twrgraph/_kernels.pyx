# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for products of tuples of group elements.

A tuple is a 1-d int32 array of indices into an enumerated finite group
whose multiplication table is ``tmul`` (row = left factor).
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t idx_t


def tuple_mul(const idx_t[:, ::1] tmul, const idx_t[::1] a, const idx_t[::1] b):
    cdef Py_ssize_t i, k = a.shape[0]
    out = np.empty(k, dtype=np.int32)
    cdef idx_t[::1] o = out
    for i in range(k):
        o[i] = tmul[a[i], b[i]]
    return out


def tuple_twist(const idx_t[::1] conj, const idx_t[::1] f, const idx_t[::1] idx):
    cdef Py_ssize_t i, k = f.shape[0]
    out = np.empty(k, dtype=np.int32)
    cdef idx_t[::1] o = out
    for i in range(k):
        o[i] = conj[f[idx[i]]]
    return out


def coset_lexmin(const idx_t[:, ::1] tmul, const idx_t[:, ::1] rset, const idx_t[::1] f):
    """Lexicographically smallest ``r*f`` over the rows ``r`` of ``rset``."""
    cdef Py_ssize_t m = rset.shape[0], k = f.shape[0]
    cdef Py_ssize_t j, i
    cdef idx_t x, y
    out = np.empty(k, dtype=np.int32)
    cdef idx_t[::1] o = out
    for i in range(k):
        o[i] = tmul[rset[0, i], f[i]]
    cdef int cmp
    cdef Py_ssize_t pos
    for j in range(1, m):
        cmp = 0
        pos = 0
        for i in range(k):
            x = tmul[rset[j, i], f[i]]
            y = o[i]
            if x != y:
                cmp = -1 if x < y else 1
                pos = i
                break
        if cmp < 0:
            for i in range(pos, k):
                o[i] = tmul[rset[j, i], f[i]]
    return out


def coset_members(const idx_t[:, ::1] tmul, const idx_t[:, ::1] rset, const idx_t[::1] f):
    """All products ``r*f`` as an (m, k) array."""
    cdef Py_ssize_t m = rset.shape[0], k = f.shape[0], j, i
    out = np.empty((m, k), dtype=np.int32)
    cdef idx_t[:, ::1] o = out
    for j in range(m):
        for i in range(k):
            o[j, i] = tmul[rset[j, i], f[i]]
    return out

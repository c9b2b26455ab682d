# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Word-parallel Gauss-Jordan elimination over GF(2) (compiled kernel)."""

from libc.stdint cimport uint64_t

import numpy as np
cimport numpy as cnp

cnp.import_array()


def rref_inplace(cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] words, Py_ssize_t ncols):
    """Reduce ``words`` to reduced row-echelon form in place; return pivot columns."""
    cdef Py_ssize_t nrows = words.shape[0]
    cdef Py_ssize_t nwords = words.shape[1]
    cdef uint64_t* base = <uint64_t*> words.data
    cdef uint64_t* prow
    cdef uint64_t* row
    cdef uint64_t* tmp
    cdef uint64_t mask, t
    cdef Py_ssize_t rank = 0, col, w, r, p, k
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        mask = (<uint64_t> 1) << (col & 63)
        p = -1
        for r in range(rank, nrows):
            if base[r * nwords + w] & mask:
                p = r
                break
        if p < 0:
            continue
        if p != rank:
            row = base + p * nwords
            prow = base + rank * nwords
            for k in range(w, nwords):
                t = row[k]
                row[k] = prow[k]
                prow[k] = t
        prow = base + rank * nwords
        for r in range(nrows):
            if r == rank:
                continue
            row = base + r * nwords
            if row[w] & mask:
                for k in range(w, nwords):
                    row[k] ^= prow[k]
        pivots.append(col)
        rank += 1
    return pivots

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; same interface as ``_pykernel``.

Modular elimination runs on a flat ``uint64`` buffer with 128-bit products, so
any odd prime below 2**63 is supported.  Integer (fraction-free) elimination
works on Python ints and only gains from compiled loop overhead.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from math import gcd

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline unsigned long long bk_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long p) {
        return (unsigned long long)(((unsigned __int128)a * b) % p);
    }
    """
    u64 bk_mulmod(u64 a, u64 b, u64 p) nogil


cdef u64 _powmod(u64 a, u64 e, u64 p) nogil:
    cdef u64 r = 1
    a %= p
    while e:
        if e & 1:
            r = bk_mulmod(r, a, p)
        a = bk_mulmod(a, a, p)
        e >>= 1
    return r


cdef Py_ssize_t _eliminate(u64* a, Py_ssize_t nrows, Py_ssize_t ncols, u64 p,
                           bint reduced, Py_ssize_t* pivots) nogil:
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef u64 inv, f, t, x
    cdef u64* prow
    cdef u64* row
    cdef u64* tmp = <u64*> malloc(ncols * sizeof(u64))
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i * ncols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            memcpy(tmp, &a[piv * ncols], ncols * sizeof(u64))
            memcpy(&a[piv * ncols], &a[r * ncols], ncols * sizeof(u64))
            memcpy(&a[r * ncols], tmp, ncols * sizeof(u64))
        prow = &a[r * ncols]
        inv = _powmod(prow[c], p - 2, p)
        if inv != 1:
            for k in range(c, ncols):
                if prow[k] != 0:
                    prow[k] = bk_mulmod(prow[k], inv, p)
        i = 0 if reduced else r + 1
        while i < nrows:
            if i != r:
                row = &a[i * ncols]
                f = row[c]
                if f != 0:
                    for k in range(c, ncols):
                        if prow[k] != 0:
                            t = bk_mulmod(f, prow[k], p)
                            x = row[k]
                            row[k] = x - t if x >= t else x + (p - t)
            i += 1
        pivots[r] = c
        r += 1
    free(tmp)
    return r


def rref_mod(rows, Py_ssize_t ncols, p, bint reduced=True):
    cdef Py_ssize_t nrows = len(rows)
    cdef u64 pp = p
    cdef Py_ssize_t i, k, rank
    cdef u64* a
    cdef Py_ssize_t* pivots
    if nrows == 0 or ncols == 0:
        return [], []
    a = <u64*> malloc(nrows * ncols * sizeof(u64))
    pivots = <Py_ssize_t*> malloc(min(nrows, ncols) * sizeof(Py_ssize_t))
    try:
        for i in range(nrows):
            row = rows[i]
            for k in range(ncols):
                a[i * ncols + k] = <u64> (row[k] % p)
        with nogil:
            rank = _eliminate(a, nrows, ncols, pp, reduced, pivots)
        out = [[a[i * ncols + k] for k in range(ncols)] for i in range(rank)]
        piv = [pivots[i] for i in range(rank)]
    finally:
        free(a)
        free(pivots)
    return out, piv


def rank_mod(rows, Py_ssize_t ncols, p):
    return len(rref_mod(rows, ncols, p, False)[1])


cdef list _primitive(list row):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, Py_ssize_t ncols):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef list prow, row, nz
    cdef list pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list> a[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
        prow = _primitive(prow)
        a[r] = prow
        pv = prow[c]
        nz = [k for k in range(ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                g = gcd(pv, f)
                s = pv // g
                t = f // g
                if s != 1:
                    row = [x * s for x in row]
                for k in nz:
                    row[k] -= t * prow[k]
                a[i] = _primitive(row)
        pivots.append(c)
        r += 1
    return a[:r], pivots

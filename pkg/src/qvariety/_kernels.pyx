# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: sparse product of term maps and Bareiss rank.

Same contract as ``qvariety._kernels_py``.
"""
from fractions import Fraction
from math import lcm

IMPLEMENTATION = "cython"


cdef tuple _scale(dict terms):
    cdef object den = 1
    cdef object c
    for c in terms.values():
        den = lcm(den, c.denominator)
    cdef list out = []
    for e, c in terms.items():
        out.append((e, c.numerator * (den // c.denominator)))
    return den, out


cdef Py_ssize_t _pack_width(dict a, dict b, Py_ssize_t nvars):
    cdef Py_ssize_t i, x
    cdef list ma = [0] * nvars
    cdef list mb = [0] * nvars
    cdef tuple e
    for e in a:
        for i in range(nvars):
            x = e[i]
            if x > <Py_ssize_t>ma[i]:
                ma[i] = x
    for e in b:
        for i in range(nvars):
            x = e[i]
            if x > <Py_ssize_t>mb[i]:
                mb[i] = x
    cdef Py_ssize_t top = 0
    for i in range(nvars):
        x = <Py_ssize_t>ma[i] + <Py_ssize_t>mb[i]
        if x > top:
            top = x
    return (<object>top).bit_length() + 1


cdef object _pack(tuple e, Py_ssize_t width):
    cdef object key = 0
    cdef Py_ssize_t i
    for i in range(len(e)):
        key |= (<object>e[i]) << (width * i)
    return key


cdef tuple _unpack(object key, Py_ssize_t width, Py_ssize_t nvars):
    cdef object mask = (1 << width) - 1
    cdef Py_ssize_t i
    return tuple([(key >> (width * i)) & mask for i in range(nvars)])


def mul_terms(dict a, dict b, Py_ssize_t nvars):
    if not a or not b:
        return {}
    da, ia = _scale(a)
    db, ib = _scale(b)
    cdef Py_ssize_t width = _pack_width(a, b, nvars)
    cdef list pa = [(_pack(e, width), c) for e, c in ia]
    cdef list pb = [(_pack(e, width), c) for e, c in ib]
    cdef dict acc = {}
    cdef object ka, ca, kb, cb, k, prev
    cdef Py_ssize_t i, j, na = len(pa), nb = len(pb)
    for i in range(na):
        ka, ca = pa[i]
        for j in range(nb):
            kb, cb = pb[j]
            k = ka + kb
            prev = acc.get(k)
            if prev is None:
                acc[k] = ca * cb
            else:
                acc[k] = prev + ca * cb
    den = da * db
    cdef dict out = {}
    for k, c in acc.items():
        if c:
            out[_unpack(k, width, nvars)] = Fraction(c, den)
    return out


def bareiss_rank(rows):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(m[0])
    cdef Py_ssize_t rank = 0, col, r, c, pivot, best, size
    cdef object prev = 1, p, f, v
    cdef list prow, row
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = -1
        best = -1
        for r in range(rank, nrows):
            v = (<list>m[r])[col]
            if v:
                size = abs(v).bit_length()
                if best < 0 or size < best:
                    pivot = r
                    best = size
        if pivot < 0:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank

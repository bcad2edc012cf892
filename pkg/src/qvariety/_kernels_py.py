"""Pure-Python reference kernels.

These are the fallback implementations used when the compiled ``_kernels``
extension is not available.  Both modules expose the same functions with the
same semantics; ``tests/test_kernels.py`` cross-checks them.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

IMPLEMENTATION = "python"


def _scale(terms):
    """Return (common denominator, [(exponents, integer numerator), ...])."""
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    return den, [(e, c.numerator * (den // c.denominator)) for e, c in terms.items()]


def _pack_width(a, b, nvars):
    top = 0
    for i in range(nvars):
        da = max((e[i] for e in a), default=0)
        db = max((e[i] for e in b), default=0)
        top = max(top, da + db)
    return top.bit_length() + 1


def _pack(e, width):
    key = 0
    for i, x in enumerate(e):
        key |= x << (width * i)
    return key


def _unpack(key, width, nvars):
    mask = (1 << width) - 1
    return tuple((key >> (width * i)) & mask for i in range(nvars))


def mul_terms(a, b, nvars):
    """Product of two sparse term maps ``{exponents: Fraction}``.

    Coefficients are cleared to integers and monomials are packed into single
    integers so that the inner loop is integer addition and multiplication.
    """
    if not a or not b:
        return {}
    da, ia = _scale(a)
    db, ib = _scale(b)
    width = _pack_width(a, b, nvars)
    pa = [(_pack(e, width), c) for e, c in ia]
    pb = [(_pack(e, width), c) for e, c in ib]
    acc = {}
    get = acc.get
    for ka, ca in pa:
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    den = da * db
    out = {}
    for k, c in acc.items():
        if c:
            out[_unpack(k, width, nvars)] = Fraction(c, den)
    return out


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free Bareiss elimination.

    ``rows`` is consumed (copied first); entries must be Python ints.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = None
        best = None
        for r in range(rank, nrows):
            v = m[r][col]
            if v:
                size = abs(v).bit_length()
                if best is None or size < best:
                    pivot, best = r, size
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            for c in range(col + 1, ncols):
                row[c] = (p * row[c] - f * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank

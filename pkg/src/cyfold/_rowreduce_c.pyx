# cython: language_level=3
"""Compiled row reduction kernels; algorithmically identical to
_rowreduce_py so results are bit-for-bit the same."""

from fractions import Fraction
from math import gcd

BACKEND = "cython"


cdef _normalize_int_row(list nums, den):
    cdef Py_ssize_t j, n = len(nums)
    g = den if den >= 0 else -den
    for j in range(n):
        v = nums[j]
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if den < 0:
        g = -g
    if g != 1 and g != 0:
        nums = [v // g for v in nums]
        den = den // g
    return nums, den


def rref_frac(rows):
    """Reduced row echelon form over Q; see _rowreduce_py.rref_frac."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef Py_ssize_t piv = 0, col, r, sel, j, idx
    work = []
    for row in rows:
        den = 1
        for e in row:
            den = den * e.denominator // gcd(den, e.denominator)
        nums = [e.numerator * (den // e.denominator) for e in row]
        work.append((nums, den))

    pivots = []
    for col in range(ncols):
        sel = -1
        for r in range(piv, nrows):
            if (<list>(<tuple>work[r])[0])[col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        work[piv], work[sel] = work[sel], work[piv]
        pnums = (<tuple>work[piv])[0]
        pden = (<tuple>work[piv])[1]
        pval = (<list>pnums)[col]
        for r in range(nrows):
            if r == piv:
                continue
            rnums = (<tuple>work[r])[0]
            rden = (<tuple>work[r])[1]
            fval = (<list>rnums)[col]
            if fval == 0:
                continue
            newnums = [rnums[j] * pval - fval * pnums[j] for j in range(ncols)]
            work[r] = _normalize_int_row(newnums, rden * pval)
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break

    out = []
    for idx in range(nrows):
        nums = (<tuple>work[idx])[0]
        if idx < len(pivots):
            pval = (<list>nums)[pivots[idx]]
            out.append([Fraction(v, pval) for v in nums])
        else:
            out.append([Fraction(0)] * ncols)
    return out, len(pivots), pivots


def rref_modp(rows, p):
    """Reduced row echelon form over GF(p); see _rowreduce_py.rref_modp."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef Py_ssize_t piv = 0, col, r, sel, j
    work = [[v % p for v in row] for row in rows]
    pivots = []
    for col in range(ncols):
        sel = -1
        for r in range(piv, nrows):
            if (<list>work[r])[col]:
                sel = r
                break
        if sel < 0:
            continue
        work[piv], work[sel] = work[sel], work[piv]
        inv = pow((<list>work[piv])[col], p - 2, p)
        work[piv] = [(v * inv) % p for v in work[piv]]
        prow = work[piv]
        for r in range(nrows):
            if r == piv:
                continue
            f = (<list>work[r])[col]
            if f:
                wr = work[r]
                work[r] = [(wr[j] - f * prow[j]) % p for j in range(ncols)]
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break
    return work, len(pivots), pivots

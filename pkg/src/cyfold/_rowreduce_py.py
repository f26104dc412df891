"""Pure-Python row reduction kernels.

Rows over Q are carried as integer numerator lists with one positive common
denominator per row, so the inner elimination loop is integer arithmetic;
entries only become Fractions on output.  The compiled twin in
_rowreduce_c.pyx implements the identical algorithm and must produce
bit-identical results.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"


def _normalize_int_row(nums, den):
    g = abs(den)
    for v in nums:
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
    """Reduced row echelon form over Q.

    rows: list of lists of Fraction.  Returns (rref rows as Fractions,
    rank, pivot column list).  Input is not modified.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    work = []
    for row in rows:
        den = 1
        for e in row:
            den = den * e.denominator // gcd(den, e.denominator)
        nums = [e.numerator * (den // e.denominator) for e in row]
        work.append((nums, den))

    pivots = []
    piv = 0
    for col in range(ncols):
        sel = -1
        for r in range(piv, nrows):
            if work[r][0][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        work[piv], work[sel] = work[sel], work[piv]
        pnums, pden = work[piv]
        pval = pnums[col]
        for r in range(nrows):
            if r == piv:
                continue
            rnums, rden = work[r]
            fval = rnums[col]
            if fval == 0:
                continue
            # row_r - (fval/rden)/(pval/pden) * row_piv, over common den rden*pval;
            # pden cancels: (rnums[j]*pval - fval*pnums[j]) / (rden*pval)
            newnums = [rnums[j] * pval - fval * pnums[j] for j in range(ncols)]
            work[r] = _normalize_int_row(newnums, rden * pval)
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break

    out = []
    for idx in range(nrows):
        nums, den = work[idx]
        if idx < len(pivots):
            pval = nums[pivots[idx]]
            out.append([Fraction(v, pval) for v in nums])
        else:
            out.append([Fraction(0)] * ncols)
    return out, len(pivots), pivots


def rref_modp(rows, p):
    """Reduced row echelon form over GF(p), p prime.

    rows: list of lists of int (reduced mod p).  Returns (rref rows,
    rank, pivot column list).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    work = [[v % p for v in row] for row in rows]
    pivots = []
    piv = 0
    for col in range(ncols):
        sel = -1
        for r in range(piv, nrows):
            if work[r][col]:
                sel = r
                break
        if sel < 0:
            continue
        work[piv], work[sel] = work[sel], work[piv]
        inv = pow(work[piv][col], p - 2, p)
        work[piv] = [(v * inv) % p for v in work[piv]]
        prow = work[piv]
        for r in range(nrows):
            if r == piv:
                continue
            f = work[r][col]
            if f:
                wr = work[r]
                work[r] = [(wr[j] - f * prow[j]) % p for j in range(ncols)]
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break
    return work, len(pivots), pivots

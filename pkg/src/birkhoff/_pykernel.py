"""Pure-Python elimination kernels.

Used when the compiled extension is unavailable.  Inputs are lists of rows of
Python ints and are never mutated.  Pivoting is deterministic: the pivot of a
column is the first row (at or below the current pivot row) with a nonzero
entry.
"""

from math import gcd


def rref_mod(rows, ncols, p, reduced=True):
    """Row-reduce modulo ``p``.

    Returns ``(echelon_rows, pivots)`` where ``echelon_rows`` holds only the
    nonzero rows, each with pivot entry 1.  With ``reduced`` the pivot columns
    are cleared above as well as below.
    """
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            for k in range(c, ncols):
                if prow[k]:
                    prow[k] = prow[k] * inv % p
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(0 if reduced else r + 1, nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                for k in nz:
                    row[k] = (row[k] - f * prow[k]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod(rows, ncols, p):
    return len(rref_mod(rows, ncols, p, reduced=False)[1])


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, ncols):
    """Fraction-free reduced echelon form over the integers.

    Each returned row is primitive, its pivot is positive, and every pivot
    column is zero outside its pivot row.  The row space over the rationals is
    that of the input.
    """
    a = [list(row) for row in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
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
                s, t = pv // g, f // g
                if s != 1:
                    row = [x * s for x in row]
                for k in nz:
                    row[k] -= t * prow[k]
                a[i] = _primitive(row)
        pivots.append(c)
        r += 1
    return a[:r], pivots

# cython: language_level=3
"""Compiled twin of the pure-Python kernels.

Same contracts as pykernel (bit-identical outputs); the speedup comes from
re-expressing rational rows as integer vectors over a per-row positive
denominator, reducing by the row content once per elimination instead of
normalizing every Fraction operation, and running the pivot loops without
interpreter dispatch.
"""

from fractions import Fraction
from math import gcd

BACKEND_NAME = "cython"


cdef _row_to_int(row):
    """(entries, den): integer entries over a common positive denominator."""
    cdef Py_ssize_t j, n = len(row)
    den = 1
    for j in range(n):
        d = row[j].denominator
        den = den * d // gcd(den, d)
    ints = [0] * n
    for j in range(n):
        f = row[j]
        ints[j] = f.numerator * (den // f.denominator)
    return ints, den


cdef _reduce_row(list ints, den):
    cdef Py_ssize_t j, n = len(ints)
    g = den
    for j in range(n):
        g = gcd(g, ints[j])
        if g == 1:
            return den
    if g > 1:
        for j in range(n):
            ints[j] //= g
        den //= g
    return den


cdef _eliminate(list irow, iden, list prow, Py_ssize_t e, Py_ssize_t width):
    """Row operation irow := irow - (irow[e]/prow[e]) * prow on int rows.

    Returns the new (positive) denominator; irow is updated in place and
    content-reduced.  The rational value matches exact Gauss-Jordan.
    """
    cdef Py_ssize_t j
    P = prow[e]
    F = irow[e]
    for j in range(width):
        irow[j] = irow[j] * P - F * prow[j]
    new_den = iden * P
    if new_den < 0:
        new_den = -new_den
        for j in range(width):
            irow[j] = -irow[j]
    return _reduce_row(irow, new_den)


cdef _normalize_pivot_row(list prow, Py_ssize_t e, Py_ssize_t width):
    """Scale the pivot row to a unit pivot; returns the new denominator."""
    cdef Py_ssize_t j
    new_den = prow[e]
    if new_den < 0:
        new_den = -new_den
        for j in range(width):
            prow[j] = -prow[j]
    return _reduce_row(prow, new_den)


def rref_frac(rows):
    """Reduced row echelon form over Fraction; see pykernel.rref_frac."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef Py_ssize_t row = 0, col, i, pr
    cdef list nums = []
    cdef list dens = []
    for i in range(nrows):
        ints, den = _row_to_int(rows[i])
        nums.append(ints)
        dens.append(den)
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        pr = -1
        for i in range(row, nrows):
            if (<list>nums[i])[col] != 0:
                pr = i
                break
        if pr < 0:
            continue
        nums[row], nums[pr] = nums[pr], nums[row]
        dens[row], dens[pr] = dens[pr], dens[row]
        prow = <list>nums[row]
        dens[row] = _normalize_pivot_row(prow, col, ncols)
        for i in range(nrows):
            if i != row and (<list>nums[i])[col] != 0:
                dens[i] = _eliminate(<list>nums[i], dens[i], prow, col, ncols)
        pivots.append(col)
        row += 1
    out = []
    for i in range(nrows):
        irow = <list>nums[i]
        den = dens[i]
        out.append([Fraction(irow[j], den) for j in range(ncols)])
    return out, pivots


def simplex_core(tableau, basis, allowed_cols):
    """Bland-rule simplex pivoting; see pykernel.simplex_core."""
    cdef Py_ssize_t m = len(tableau) - 1
    cdef Py_ssize_t width = len(tableau[0])
    cdef Py_ssize_t rhs_col = width - 1
    cdef Py_ssize_t acols = allowed_cols
    cdef Py_ssize_t i, j, enter, leave
    cdef list nums = []
    cdef list dens = []
    cdef list bas = list(basis)
    for i in range(m + 1):
        ints, den = _row_to_int(tableau[i])
        nums.append(ints)
        dens.append(den)
    status = "optimal"
    enter = -1
    while True:
        obj = <list>nums[m]
        enter = -1
        for j in range(acols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            status = "optimal"
            enter = -1
            break
        leave = -1
        bn = 0
        bd = 0
        for i in range(m):
            irow = <list>nums[i]
            a = irow[enter]
            if a > 0:
                rn = irow[rhs_col]
                if leave < 0:
                    bn, bd, leave = rn, a, i
                else:
                    cmp = rn * bd - bn * a
                    if cmp < 0 or (cmp == 0 and bas[i] < bas[leave]):
                        bn, bd, leave = rn, a, i
        if leave < 0:
            status = "unbounded"
            break
        prow = <list>nums[leave]
        dens[leave] = _normalize_pivot_row(prow, enter, width)
        for i in range(m + 1):
            if i != leave and (<list>nums[i])[enter] != 0:
                dens[i] = _eliminate(<list>nums[i], dens[i], prow, enter, width)
        bas[leave] = enter
    out = []
    for i in range(m + 1):
        irow = <list>nums[i]
        den = dens[i]
        out.append([Fraction(irow[j], den) for j in range(width)])
    return status, enter, out, bas


def dd_step(rays, zsets, vals, bit):
    """Double-description halfspace step; see pykernel.dd_step."""
    cdef Py_ssize_t nrays = len(rays)
    cdef Py_ssize_t dim = len(rays[0]) if nrays else 0
    cdef Py_ssize_t i, j, k, t
    cdef list pos = [], zer = [], neg = []
    for i in range(nrays):
        v = vals[i]
        if v > 0:
            pos.append(i)
        elif v == 0:
            zer.append(i)
        else:
            neg.append(i)
    out_r = [rays[i] for i in pos]
    out_z = [zsets[i] for i in pos]
    for i in zer:
        out_r.append(rays[i])
        out_z.append(zsets[i] | bit)
    cdef bint adjacent
    for i in pos:
        zi = zsets[i]
        vi = vals[i]
        ri = rays[i]
        for j in neg:
            mask = zi & zsets[j]
            adjacent = True
            for k in range(nrays):
                if k != i and k != j and (zsets[k] & mask) == mask:
                    adjacent = False
                    break
            if not adjacent:
                continue
            vj = vals[j]
            rj = rays[j]
            w = [0] * dim
            g = 0
            for t in range(dim):
                x = vi * rj[t] - vj * ri[t]
                w[t] = x
                g = gcd(g, x)
            if g > 1:
                for t in range(dim):
                    w[t] //= g
            out_r.append(tuple(w))
            out_z.append(mask | bit)
    return out_r, out_z

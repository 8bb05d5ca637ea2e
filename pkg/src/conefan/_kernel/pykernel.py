"""Pure-Python reference implementations of the three hot kernels.

The compiled twin lives in fastkernel.pyx; `conefan._kernel` selects one of
the two at import time.  Both backends share the contracts below and must
produce bit-identical results:

  rref_frac(rows)                 reduced row echelon form over Fraction
  simplex_core(tab, basis, k)     Bland-rule pivoting on an exact tableau
  dd_step(rays, zsets, vals, bit) one double-description halfspace step

The Python versions favour clarity; the compiled versions re-express the
same arithmetic on integer numerator/denominator pairs with C-level loops.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

BACKEND_NAME = "python"


def rref_frac(rows):
    """Reduced row echelon form of a rational matrix.

    Returns (new_rows, pivot_columns); the input is not modified.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        pr = None
        for i in range(row, nrows):
            if m[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        pv = m[row][col]
        if pv != 1:
            m[row] = [x / pv for x in m[row]]
        for i in range(nrows):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    return [list(r) for r in m], pivots


def _pivot(tab, prow, pcol):
    piv = tab[prow][pcol]
    if piv != 1:
        tab[prow] = [x / piv for x in tab[prow]]
    prow_vals = tab[prow]
    for i in range(len(tab)):
        if i != prow and tab[i][pcol] != 0:
            f = tab[i][pcol]
            tab[i] = [a - f * b for a, b in zip(tab[i], prow_vals)]


def simplex_core(tableau, basis, allowed_cols):
    """Run Bland-rule simplex pivoting to optimality or unboundedness.

    tableau: (m+1) x (n+1) Fractions, last row = reduced costs, last column
    = right-hand side; basis: length-m list of basic column indices.  Only
    columns < allowed_cols may enter.  The inputs are consumed.

    Returns (status, entering_col, tableau, basis) with status "optimal"
    (entering_col == -1) or "unbounded" (the improving column).
    """
    tab = [list(r) for r in tableau]
    basis = list(basis)
    m = len(tab) - 1
    rhs_col = len(tab[0]) - 1
    while True:
        obj = tab[m]
        enter = -1
        for j in range(allowed_cols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal", -1, tab, basis
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][rhs_col] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded", enter, tab, basis
        _pivot(tab, leave, enter)
        basis[leave] = enter
    # unreachable


def dd_step(rays, zsets, vals, bit):
    """Intersect cone(rays) with one halfspace {x : <a, x> >= 0}.

    rays: integer tuples; zsets: bitmasks of previously-tight constraints;
    vals[i] = <a, rays[i]>; bit marks the new constraint.  Keeps the
    representation minimal via the combinatorial adjacency test.

    Returns (new_rays, new_zsets).
    """
    pos, zer, neg = [], [], []
    for i, v in enumerate(vals):
        (pos if v > 0 else (zer if v == 0 else neg)).append(i)
    out_r = [rays[i] for i in pos]
    out_z = [zsets[i] for i in pos]
    for i in zer:
        out_r.append(rays[i])
        out_z.append(zsets[i] | bit)
    nrays = len(rays)
    dim = len(rays[0]) if rays else 0
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
            w = [vi * rj[t] - vj * ri[t] for t in range(dim)]
            g = 0
            for x in w:
                g = gcd(g, x)
            if g > 1:
                w = [x // g for x in w]
            out_r.append(tuple(w))
            out_z.append((zi & zsets[j]) | bit)
    return out_r, out_z

"""Exact linear algebra: solving, ranks, kernels, and lattice determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from . import _kernel
from .errors import InputError
from .rational import (
    IntVec,
    Mat,
    Vec,
    frac,
    ivec,
    primitive_int_vector,
    vzero,
)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return [], []
    return _kernel.rref_frac([[frac(x) for x in r] for r in rows])


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


@dataclass(frozen=True)
class LinearSolution:
    """One particular solution together with a basis of the kernel."""

    particular: Vec
    kernel_basis: tuple[Vec, ...]


def _sign_normalize(v: Sequence[Fraction]) -> Vec:
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def kernel_basis(rows: Sequence[Sequence]) -> tuple[Vec, ...]:
    """Basis of {x : A x = 0} derived from the reduced echelon form.

    Each basis vector is sign-normalized so its first nonzero entry is
    positive, making the output canonical.
    """
    if not rows:
        return ()
    ncols = len(rows[0])
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(_sign_normalize(v))
    return tuple(basis)


def linear_solve(A: Mat, b: Vec) -> Optional[LinearSolution]:
    """Solve A x = b exactly; None when the system is inconsistent."""
    if len(A) != len(b):
        raise InputError("row count of A must match length of b")
    if not A:
        return LinearSolution((), ())
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = list(vzero(ncols))
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return LinearSolution(tuple(x), kernel_basis(A))


def _int_det(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hermite_basis_det(vectors: Sequence[Sequence]) -> tuple[int, int]:
    """Rank and lattice determinant of a family of integer vectors.

    The determinant is the index of the integer span of the vectors inside
    the saturated lattice of the rational subspace they span (equivalently
    the gcd of all maximal minors); it is 1 exactly when the vectors extend
    to a basis of the ambient lattice.
    """
    if not vectors:
        return 0, 1
    rows = [list(ivec(v)) for v in vectors]
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise InputError("vectors have differing lengths")
    work = [r[:] for r in rows]
    m = len(work)
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if work[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(work[i][col]))
            work[r], work[best] = work[best], work[r]
            done = True
            for i in range(r + 1, m):
                if work[i][col] != 0:
                    q = work[i][col] // work[r][col]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][col] != 0:
                        done = False
            if done:
                break
        if work[r][col] != 0:
            if work[r][col] < 0:
                work[r] = [-x for x in work[r]]
            r += 1
    rk = r
    if rk == 0:
        return 0, 1
    top = work[:rk]
    g = 0
    for cols in combinations(range(n), rk):
        d = _int_det([[row[c] for c in cols] for row in top])
        g = gcd(g, d)
        if g == 1:
            break
    return rk, g


def primitive(v: Sequence) -> IntVec:
    """Primitive representative of a nonzero integer vector."""
    return primitive_int_vector(ivec(v))

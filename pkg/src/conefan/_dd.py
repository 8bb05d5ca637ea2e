"""Incremental double description over the integers.

Computes a minimal generator pair (lineality basis, extreme rays) of a cone
given by homogeneous inequalities with integer normals.  Constraints are
processed one at a time; while the lineality space is nontrivial the
dimension-drop rule applies, afterwards each halfspace step combines
adjacent positive/negative ray pairs (the hot loop, delegated to the
kernel backend).
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from . import _kernel
from .rational import IntVec, idot
from .linalg import rref
from .rational import primitive_direction


def _reduce(v: tuple[int, ...]) -> IntVec:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _canonical_basis(vectors: list[IntVec]) -> tuple[IntVec, ...]:
    """Canonical primitive basis of the span of integer vectors."""
    if not vectors:
        return ()
    red, pivots = rref(vectors)
    rows = [tuple(r) for r in red[: len(pivots)]]
    return tuple(primitive_direction(r) for r in rows)


@lru_cache(maxsize=None)
def cone_generators(
    rows: tuple[IntVec, ...], dim: int
) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    """Minimal (lineality, rays) of {x : <a, x> >= 0 for every row a}."""
    L: list[IntVec] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    R: list[IntVec] = []
    Z: list[int] = []
    for idx, a in enumerate(rows):
        bit = 1 << idx
        lv = [idot(a, l) for l in L]
        k = next((i for i, t in enumerate(lv) if t != 0), None)
        if k is not None:
            l0, v0 = L[k], lv[k]
            if v0 < 0:
                l0 = tuple(-t for t in l0)
                v0 = -v0
            newL: list[IntVec] = []
            for i, l in enumerate(L):
                if i == k:
                    continue
                if lv[i] == 0:
                    newL.append(l)
                else:
                    newL.append(
                        _reduce(tuple(v0 * x - lv[i] * y for x, y in zip(l, l0)))
                    )
            newR: list[IntVec] = []
            newZ: list[int] = []
            for r, z in zip(R, Z):
                rv = idot(a, r)
                if rv == 0:
                    newR.append(r)
                else:
                    newR.append(
                        _reduce(tuple(v0 * x - rv * y for x, y in zip(r, l0)))
                    )
                newZ.append(z | bit)
            # the pivot lineality direction becomes a ray, tight on all
            # previously processed constraints
            newR.append(l0)
            newZ.append(bit - 1)
            L, R, Z = newL, newR, newZ
        else:
            vals = [idot(a, r) for r in R]
            R, Z = _kernel.dd_step(R, Z, vals, bit)
            R = list(R)
            Z = list(Z)
    rays = tuple(sorted(tuple(r) for r in R))
    return _canonical_basis(L), rays

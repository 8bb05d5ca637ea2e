"""Shared oracles and random-instance generators for the test suite.

The brute-force routines here are deliberately independent of the library
paths they validate: vertices by enumerating constraint subsets, recession
rays from the homogeneous system, Newton-polyhedron membership by direct
inequality evaluation on integer points.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from conefan.linalg import linear_solve, rank
from conefan.polyhedra import HPolyhedron, contains
from conefan.rational import dot, vec


def brute_vertices(P: HPolyhedron) -> set:
    """0-faces by enumerating dim-subsets of tight constraints."""
    n = P.ambient_dim
    rows = [(vec(a), b) for a, b in P.inequalities] + [
        (vec(a), b) for a, b in P.equalities
    ]
    out = set()
    for subset in combinations(range(len(rows)), n):
        A = tuple(rows[i][0] for i in subset)
        b = vec([rows[i][1] for i in subset])
        if rank(A) != n:
            continue
        sol = linear_solve(A, b)
        if sol is None:
            continue
        x = sol.particular
        if contains(P, x):
            out.add(x)
    return out


def brute_recession_rays(P: HPolyhedron) -> set:
    """Extreme rays of the recession cone, assuming it is pointed."""
    from conefan.rational import primitive_direction

    n = P.ambient_dim
    normals = [vec(a) for a, _ in P.inequalities] + [
        vec(a) for a, _ in P.equalities
    ] + [vec(tuple(-x for x in a)) for a, _ in P.equalities]
    out = set()
    for size in range(n):
        for subset in combinations(range(len(normals)), size):
            A = tuple(normals[i] for i in subset)
            if A and rank(A) != n - 1:
                continue
            if not A and n != 1:
                continue
            from conefan.linalg import kernel_basis

            kb = kernel_basis(A) if A else ((Fraction(1),),)
            if len(kb) != 1:
                continue
            for cand in (kb[0], tuple(-x for x in kb[0])):
                if all(dot(u, cand) <= 0 for u, _ in P.inequalities) and all(
                    dot(u, cand) == 0 for u, _ in P.equalities
                ):
                    tight = [
                        u
                        for u, _ in P.inequalities
                        if dot(u, cand) == 0
                    ] + [u for u, _ in P.equalities] + [
                        vec(tuple(-x for x in u)) for u, _ in P.equalities
                    ]
                    if rank(tight) == n - 1:
                        out.add(primitive_direction(cand))
    return out


def random_h_polyhedron(rng: random.Random, dim: int, nonempty=True) -> HPolyhedron:
    """Random rational H-polyhedron; nonempty by construction when asked."""
    count = rng.randint(dim, 2 * dim + 2)
    anchor = vec([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim)])
    rows = []
    for _ in range(count):
        normal = [Fraction(rng.randint(-9, 9)) for _ in range(dim)]
        if all(x == 0 for x in normal):
            normal[rng.randrange(dim)] = Fraction(1)
        if nonempty:
            slack = Fraction(rng.randint(0, 6), rng.randint(1, 3))
            offset = dot(vec(normal), anchor) + slack
        else:
            offset = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        rows.append((tuple(normal), offset))
    return HPolyhedron.from_rows(rows, (), dim)


def random_generators(rng: random.Random, r: int, n: int, lo=0, hi=5):
    """Random generator set spanning a pointed cone inside the orthant."""
    gens = []
    while len(gens) < r:
        g = tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))
        if all(x == 0 for x in g):
            continue
        gens.append(g)
    return gens


def np_membership_set(I, bound: int) -> frozenset:
    """Integer points of the Newton polyhedron with coordinate sum <= bound."""
    from conefan.graded import newton_hform
    from conefan.rational import ivec

    H = newton_hform(I)
    n = I.ambient
    rows = [(ivec(a), int(b)) for a, b in H.inequalities]
    member = []

    def scan(prefix, remaining):
        if len(prefix) == n:
            for a, b in rows:
                if sum(x * y for x, y in zip(a, prefix)) > b:
                    return
            member.append(tuple(prefix))
            return
        for v in range(remaining + 1):
            scan(prefix + [v], remaining - v)

    scan([], bound)
    return frozenset(member)


def asymptotic_newton_via_lift(system, m):
    """Literal lift-and-project route to the limit Newton polyhedron.

    Builds {(l, u, x) : l >= 0, sum l_i m_i = m, u a convex splitting of
    each l_i over the Newton polyhedron vertices of ideal i, x >= sum u V}
    and projects to the x block with Fourier-Motzkin.  Serves as the
    independent oracle for conefan.graded.asymptotic_newton.
    """
    from conefan.graded import newton_polyhedron
    from conefan.polyhedra import project
    from conefan.rational import ivec

    m = ivec(m)
    n = system.ambient
    pairs = [
        (d, I) for d, I in zip(system.degrees, system.ideals) if not I.is_zero
    ]
    degrees = [p[0] for p in pairs]
    ideals = [p[1] for p in pairs]
    vertex_lists = [newton_polyhedron(I).vertices for I in ideals]
    k = len(degrees)
    mu_count = sum(len(v) for v in vertex_lists)
    total = k + mu_count + n
    eqs = []
    for row in range(system.grading_rank):
        normal = [Fraction(0)] * total
        for i in range(k):
            normal[i] = Fraction(degrees[i][row])
        eqs.append((tuple(normal), Fraction(m[row])))
    offset = k
    mu_index = []
    for i, verts in enumerate(vertex_lists):
        idxs = list(range(offset, offset + len(verts)))
        mu_index.append(idxs)
        offset += len(verts)
        normal = [Fraction(0)] * total
        normal[i] = Fraction(1)
        for j in idxs:
            normal[j] = Fraction(-1)
        eqs.append((tuple(normal), Fraction(0)))
    ineqs = []
    for i in range(k + mu_count):
        row = [Fraction(0)] * total
        row[i] = Fraction(-1)
        ineqs.append((tuple(row), Fraction(0)))
    for coord in range(n):
        row = [Fraction(0)] * total
        for i, verts in enumerate(vertex_lists):
            for j, v in zip(mu_index[i], verts):
                row[j] = v[coord]
        row[k + mu_count + coord] = Fraction(-1)
        ineqs.append((tuple(row), Fraction(0)))
    lifted = HPolyhedron.from_rows(ineqs, eqs, ambient_dim=total)
    return project(lifted, range(k + mu_count, total))

"""Rational polyhedra with dual descriptions.

An HPolyhedron is a finite system of inequalities <a, x> <= b and equalities
<a, x> = b; a VRepresentation is conv(vertices) + cone(rays) + span(lineality).
Conversions run through the double description of the homogenization, so both
directions produce irredundant output.  The empty polyhedron is a first-class
value carrying an explicit flag, and every operation is total on it.

Canonical forms make equality of point sets a structural comparison:
inequalities are reduced modulo the equality space, scaled to primitive
integer rows, and sorted; vertex and ray lists are sorted with primitive
integer rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from . import _simplex
from ._dd import cone_generators, _canonical_basis
from .errors import (
    BudgetExceededError,
    CapExceededError,
    EmptyPolyhedronError,
    InputError,
)
from .rational import (
    IntVec,
    Vec,
    dot,
    frac,
    is_zero_vec,
    primitive_direction,
    vec,
    vzero,
)

DEFAULT_DIM_CAP = 8
_FM_ROW_BUDGET = 2000
_LP_PRUNE_THRESHOLD = 24

Row = tuple[Vec, Fraction]


def _row(normal: Sequence, offset) -> Row:
    return (vec(normal), frac(offset))


@dataclass(frozen=True)
class HPolyhedron:
    """Polyhedron {x : <a,x> <= b for inequalities, <a,x> = b for equalities}."""

    inequalities: tuple[Row, ...]
    equalities: tuple[Row, ...]
    ambient_dim: int
    empty: bool = False

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError("ambient dimension must be positive")
        for normal, _ in self.inequalities + self.equalities:
            if len(normal) != self.ambient_dim:
                raise InputError("constraint dimension mismatch")

    @staticmethod
    def from_rows(
        inequalities: Sequence[tuple[Sequence, object]] = (),
        equalities: Sequence[tuple[Sequence, object]] = (),
        ambient_dim: Optional[int] = None,
    ) -> "HPolyhedron":
        ineqs = []
        eqs = []
        for normal, offset in inequalities:
            r = _row(normal, offset)
            if is_zero_vec(r[0]):
                if r[1] < 0:
                    return HPolyhedron.make_empty(ambient_dim or len(normal))
                continue
            ineqs.append(r)
        for normal, offset in equalities:
            r = _row(normal, offset)
            if is_zero_vec(r[0]):
                if r[1] != 0:
                    return HPolyhedron.make_empty(ambient_dim or len(normal))
                continue
            eqs.append(r)
        if ambient_dim is None:
            if not ineqs and not eqs:
                raise InputError("ambient dimension required for empty systems")
            ambient_dim = len((ineqs + eqs)[0][0])
        return HPolyhedron(tuple(ineqs), tuple(eqs), ambient_dim)

    @staticmethod
    def make_empty(ambient_dim: int) -> "HPolyhedron":
        return HPolyhedron((), (), ambient_dim, empty=True)


@dataclass(frozen=True)
class VRepresentation:
    """conv(vertices) + cone(rays) + span(lineality); empty iff flagged."""

    vertices: tuple[Vec, ...]
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...]
    ambient_dim: int
    empty: bool = False

    def __post_init__(self):
        if self.empty and (self.vertices or self.rays or self.lineality):
            raise InputError("empty V-representation must carry no generators")
        if not self.empty and not self.vertices:
            raise InputError("nonempty V-representation needs at least one point")
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise InputError("vertex dimension mismatch")
        for r in self.rays + self.lineality:
            if len(r) != self.ambient_dim:
                raise InputError("ray dimension mismatch")

    @staticmethod
    def make(
        vertices: Sequence[Sequence] = (),
        rays: Sequence[Sequence] = (),
        lineality: Sequence[Sequence] = (),
        ambient_dim: Optional[int] = None,
    ) -> "VRepresentation":
        verts = tuple(sorted(vec(v) for v in vertices))
        pr = tuple(
            sorted({primitive_direction(r) for r in rays if not is_zero_vec(vec(r))})
        )
        lin = _canonical_basis([primitive_direction(l) for l in lineality
                                if not is_zero_vec(vec(l))])
        if ambient_dim is None:
            sample = (list(verts) + list(pr) + list(lin) or [None])[0]
            if sample is None:
                raise InputError("ambient dimension required for empty data")
            ambient_dim = len(sample)
        if not verts:
            return VRepresentation.make_empty(ambient_dim)
        return VRepresentation(verts, pr, lin, ambient_dim)

    @staticmethod
    def make_empty(ambient_dim: int) -> "VRepresentation":
        return VRepresentation((), (), (), ambient_dim, empty=True)


def _primitive_row(normal: Vec, offset: Fraction) -> tuple[IntVec, ...]:
    """Scale (normal | offset) to coprime integers, keeping orientation."""
    entries = list(normal) + [offset]
    scale = 1
    for x in entries:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [int(x * scale) for x in entries]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _homogeneous_rows(P: HPolyhedron) -> tuple[IntVec, ...]:
    """Integer rows a with <a,(x,t)> >= 0 describing the homogenization."""
    n = P.ambient_dim
    rows = set()
    for normal, offset in P.inequalities:
        r = _primitive_row(tuple(-x for x in normal), offset)
        rows.add(r)
    for normal, offset in P.equalities:
        r = _primitive_row(tuple(-x for x in normal), offset)
        rows.add(r)
        rows.add(tuple(-x for x in r))
    t_row = tuple([0] * n + [1])
    rows.discard(t_row)
    return (t_row,) + tuple(sorted(rows))


@lru_cache(maxsize=None)
def _dd_cached(P: HPolyhedron, dim_cap: int) -> VRepresentation:
    n = P.ambient_dim
    if n > dim_cap:
        raise CapExceededError(
            f"dual description capped at dimension {dim_cap}, got {n}"
        )
    if P.empty:
        return VRepresentation.make_empty(n)
    lin, rays = cone_generators(_homogeneous_rows(P), n + 1)
    assert all(l[n] == 0 for l in lin), "lineality escaped the t >= 0 halfspace"
    vertices = []
    rec_rays = []
    for r in rays:
        t = r[n]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in r[:n]))
        else:
            assert t == 0
            rec_rays.append(r[:n])
    if not vertices:
        return VRepresentation.make_empty(n)
    return VRepresentation(
        tuple(sorted(vertices)),
        tuple(sorted(rec_rays)),
        _canonical_basis([l[:n] for l in lin]),
        n,
    )


def dual_description(P: HPolyhedron, dim_cap: int = DEFAULT_DIM_CAP) -> VRepresentation:
    """Irredundant V-representation of an H-polyhedron (double description)."""
    return _dd_cached(P, dim_cap)


def _reduce_mod_equalities(
    rows: list[tuple[Vec, Fraction]], eq_red: list[list[Fraction]], eq_pivots: list[int]
) -> list[tuple[Vec, Fraction]]:
    out = []
    for normal, offset in rows:
        aug = list(normal) + [offset]
        for i, p in enumerate(eq_pivots):
            if aug[p] != 0:
                f = aug[p]
                aug = [a - f * b for a, b in zip(aug, eq_red[i])]
        normal2 = tuple(aug[:-1])
        offset2 = aug[-1]
        if is_zero_vec(normal2):
            assert offset2 >= 0, "facet reduced to an absurd row"
            continue
        out.append((normal2, offset2))
    return out


def vrep_to_h(V: VRepresentation) -> HPolyhedron:
    """Canonical H-description of a V-representation."""
    n = V.ambient_dim
    if V.empty:
        return HPolyhedron.make_empty(n)
    gens = set()
    for v in V.vertices:
        gens.add(_primitive_row(v, Fraction(1)))
    for r in V.rays:
        gens.add(_primitive_row(vec(r), Fraction(0)))
    for l in V.lineality:
        row = _primitive_row(vec(l), Fraction(0))
        gens.add(row)
        gens.add(tuple(-x for x in row))
    lin, rays = cone_generators(tuple(sorted(gens)), n + 1)
    ineqs = []
    eqs = []
    for r in rays:
        a, c = r[:n], r[n]
        if all(x == 0 for x in a):
            assert c >= 0
            continue
        ineqs.append((tuple(Fraction(-x) for x in a), Fraction(c)))
    for l in lin:
        a, c = l[:n], l[n]
        assert not all(x == 0 for x in a)
        eqs.append((vec(a), Fraction(-c)))
    # canonicalize equalities to a reduced echelon basis, then reduce the
    # inequality normals modulo the equality space
    if eqs:
        from .linalg import rref

        red, pivots = rref([list(a) + [c] for a, c in eqs])
        assert not (pivots and pivots[-1] == n), "inconsistent affine hull"
        eq_red = red[: len(pivots)]
        eqs = [
            (tuple(r[:-1]), r[-1])
            for r in (tuple(row) for row in eq_red)
        ]
        ineqs = _reduce_mod_equalities(ineqs, eq_red, pivots)
    ineq_rows = sorted({_primitive_row(a, c) for a, c in ineqs})
    eq_rows = sorted({_sign_normal_row(_primitive_row(a, c)) for a, c in eqs})
    return HPolyhedron(
        tuple((vec(r[:-1]), Fraction(r[-1])) for r in ineq_rows),
        tuple((vec(r[:-1]), Fraction(r[-1])) for r in eq_rows),
        n,
    )


def _sign_normal_row(row: tuple[int, ...]) -> tuple[int, ...]:
    for x in row:
        if x != 0:
            return row if x > 0 else tuple(-y for y in row)
    return row


def canonical_h(P: HPolyhedron, dim_cap: int = DEFAULT_DIM_CAP) -> HPolyhedron:
    """Unique canonical H-form of the point set described by P."""
    return vrep_to_h(dual_description(P, dim_cap))


def canonical_vrep(V: VRepresentation, dim_cap: int = DEFAULT_DIM_CAP) -> VRepresentation:
    """Irredundant canonical V-form (vertices become 0-faces, rays extreme)."""
    if V.empty:
        return V
    return dual_description(vrep_to_h(V), dim_cap)


def same_point_set(P: HPolyhedron, Q: HPolyhedron) -> bool:
    return canonical_h(P) == canonical_h(Q)


@dataclass(frozen=True)
class WeylDecomposition:
    polytope_vertices: tuple[Vec, ...]
    recession: VRepresentation


def decompose_weyl(P: HPolyhedron) -> WeylDecomposition:
    """Split P into a polytope part plus its recession cone."""
    V = dual_description(P)
    if V.empty:
        raise EmptyPolyhedronError("cannot decompose the empty polyhedron")
    origin = vzero(P.ambient_dim)
    recession = VRepresentation((origin,), V.rays, V.lineality, P.ambient_dim)
    return WeylDecomposition(V.vertices, recession)


class _Unbounded:
    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()


@dataclass(frozen=True)
class MinimizeResult:
    value: Fraction
    argmin: Vec


def minimize_linear(P: HPolyhedron, u: Sequence):
    """Exact minimum of <u, x> over P, or UNBOUNDED.

    The minimum, when it exists, is attained at a vertex of the polytope
    part, so the argmin is always a rational point.
    """
    u = vec(u)
    V = dual_description(P)
    if V.empty:
        raise EmptyPolyhedronError("cannot minimize over the empty polyhedron")
    for l in V.lineality:
        if dot(u, vec(l)) != 0:
            return UNBOUNDED
    for r in V.rays:
        if dot(u, vec(r)) < 0:
            return UNBOUNDED
    best_val = None
    best_arg = None
    for v in V.vertices:
        val = dot(u, v)
        if best_val is None or val < best_val or (val == best_val and v < best_arg):
            best_val, best_arg = val, v
    return MinimizeResult(best_val, best_arg)


def minkowski_sum(P: VRepresentation, Q: VRepresentation) -> VRepresentation:
    """Exact Minkowski sum of two V-representations (canonical output)."""
    if P.ambient_dim != Q.ambient_dim:
        raise InputError("Minkowski sum needs matching ambient dimensions")
    if P.empty or Q.empty:
        return VRepresentation.make_empty(P.ambient_dim)
    verts = [tuple(a + b for a, b in zip(v, w)) for v in P.vertices for w in Q.vertices]
    return canonical_vrep(
        VRepresentation.make(
            vertices=verts,
            rays=P.rays + Q.rays,
            lineality=P.lineality + Q.lineality,
            ambient_dim=P.ambient_dim,
        )
    )


def contains(P: HPolyhedron, x: Sequence) -> bool:
    """Exact membership test."""
    if P.empty:
        return False
    x = vec(x)
    for normal, offset in P.inequalities:
        if dot(normal, x) > offset:
            return False
    for normal, offset in P.equalities:
        if dot(normal, x) != offset:
            return False
    return True


def scale_polyhedron(P: HPolyhedron, t) -> HPolyhedron:
    """The dilate t*P for a positive rational t.

    Rows are re-normalized to primitive integers and re-sorted, so scaling
    a canonical form yields the canonical form of the scaled set.
    """
    t = frac(t)
    if t <= 0:
        raise InputError("scaling factor must be positive")
    if P.empty:
        return P
    ineq_rows = sorted(
        _primitive_row(normal, offset * t) for normal, offset in P.inequalities
    )
    eq_rows = sorted(
        _sign_normal_row(_primitive_row(normal, offset * t))
        for normal, offset in P.equalities
    )
    return HPolyhedron(
        tuple((vec(r[:-1]), Fraction(r[-1])) for r in ineq_rows),
        tuple((vec(r[:-1]), Fraction(r[-1])) for r in eq_rows),
        P.ambient_dim,
    )


def _prune_rows(
    ineqs: list[tuple[Vec, Fraction]],
    eqs: list[tuple[Vec, Fraction]],
    dim: int,
    force_lp: bool,
):
    """Cheap dedup plus (optionally) exact LP redundancy removal.

    Returns None when the system is detected infeasible.
    """
    seen = {}
    for normal, offset in ineqs:
        row = _primitive_row(normal, offset)
        key, off = row[:-1], row[-1]
        zero_normal = all(x == 0 for x in key)
        if zero_normal:
            if off < 0:
                return None
            continue
        # identical normals keep the tightest offset
        prev = seen.get(key)
        if prev is None or (off, ) < prev[1:]:
            seen[key] = (key, off)
    rows = [
        (vec(k), Fraction(off))
        for k, (key, off) in sorted(seen.items())
    ]
    if not force_lp and len(rows) <= _LP_PRUNE_THRESHOLD:
        return rows
    kept = list(rows)
    i = 0
    while i < len(kept):
        candidate = kept[i]
        rest = kept[:i] + kept[i + 1 :]
        res = _simplex.maximize_over_h(candidate[0], rest, eqs, dim)
        if res.status == "infeasible":
            return None
        if res.status == "optimal" and res.value <= candidate[1]:
            kept.pop(i)
        else:
            i += 1
    return kept


def project(P: HPolyhedron, keep: Sequence[int]) -> HPolyhedron:
    """Image of P under projection onto the 0-based coordinates in `keep`.

    Variables outside `keep` are eliminated one at a time: by substitution
    when they occur in an equality, by Fourier-Motzkin combination of the
    positive and negative inequality rows otherwise.  Redundant rows are
    removed by exact feasibility tests along the way.
    """
    keep = sorted(set(keep))
    n = P.ambient_dim
    if any(k < 0 or k >= n for k in keep):
        raise InputError("projection indices out of range")
    if not keep:
        raise InputError("projection needs at least one coordinate")
    if P.empty:
        return HPolyhedron.make_empty(len(keep))
    ineqs = [(vec(a), frac(b)) for a, b in P.inequalities]
    eqs = [(vec(a), frac(b)) for a, b in P.equalities]
    drop = [j for j in range(n) if j not in keep]
    alive = set(range(n))
    while drop:
        # eliminate the variable with the fewest pairings first
        def fm_cost(j):
            pos = sum(1 for a, _ in ineqs if a[j] > 0)
            neg = sum(1 for a, _ in ineqs if a[j] < 0)
            return pos * neg

        subst = [j for j in drop if any(a[j] != 0 for a, _ in eqs)]
        if subst:
            j = subst[0]
            eq = next((row for row in eqs if row[0][j] != 0))
            eqs.remove(eq)
            enorm, eoff = eq

            def substitute(row):
                a, b = row
                if a[j] == 0:
                    return row
                f = a[j] / enorm[j]
                return (
                    tuple(x - f * y for x, y in zip(a, enorm)),
                    b - f * eoff,
                )

            ineqs = [substitute(r) for r in ineqs]
            eqs = [substitute(r) for r in eqs]
        else:
            j = min(drop, key=fm_cost)
            pos = [r for r in ineqs if r[0][j] > 0]
            neg = [r for r in ineqs if r[0][j] < 0]
            zero = [r for r in ineqs if r[0][j] == 0]
            combos = []
            for (ap, bp) in pos:
                for (an, bn) in neg:
                    coef_p = ap[j]
                    coef_n = -an[j]
                    normal = tuple(
                        coef_n * x + coef_p * y for x, y in zip(ap, an)
                    )
                    combos.append((normal, coef_n * bp + coef_p * bn))
            ineqs = zero + combos
        drop.remove(j)
        alive.discard(j)
        pruned = _prune_rows(ineqs, eqs, n, force_lp=False)
        if pruned is None:
            return HPolyhedron.make_empty(len(keep))
        ineqs = pruned
        if len(ineqs) > _FM_ROW_BUDGET:
            raise BudgetExceededError(
                f"projection exceeded {_FM_ROW_BUDGET} intermediate rows"
            )
    proj_ineqs = [
        (tuple(a[k] for k in keep), b)
        for a, b in ineqs
        if all(a[j] == 0 for j in range(n) if j not in keep)
    ]
    proj_eqs = [
        (tuple(a[k] for k in keep), b)
        for a, b in eqs
        if all(a[j] == 0 for j in range(n) if j not in keep)
    ]
    assert len(proj_ineqs) == len(ineqs) and len(proj_eqs) == len(eqs), (
        "eliminated variable left a nonzero coefficient"
    )
    out = HPolyhedron.from_rows(proj_ineqs, proj_eqs, ambient_dim=len(keep))
    if len(keep) <= DEFAULT_DIM_CAP:
        return canonical_h(out)
    return out

"""Strongly convex rational cones and fans.

Cones carry both their extreme rays (primitive integer, sorted) and an
H-description by facet normals; lower-dimensional cones encode their span
through opposite normal pairs.  Equality is structural on the canonical
form.  Fans are stored through their maximal cones.

The fan constructions here realize the piecewise-linear structure of the
minimum-cost representation function: its linearity fan (the hyperplane
arrangement spanned by generator subsets, restricted to the cone), the
normal fan of the price polyhedron, common refinements, and a deterministic
smooth refinement by stellar subdivision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ._dd import cone_generators
from .errors import (
    BudgetExceededError,
    CapExceededError,
    EmptyPolyhedronError,
    InputError,
    NotPointedError,
    NotPointedSupportError,
)
from .linalg import hermite_basis_det, kernel_basis, linear_solve, rank, rref
from .lp import representation_cost
from .polyhedra import HPolyhedron, dual_description
from .rational import (
    IntVec,
    Vec,
    dot,
    frac,
    idot,
    is_zero_vec,
    primitive_direction,
    vec,
)

INDEPENDENT_SUBSET_CAP = 12
SMOOTH_REFINE_DIM_CAP = 4
SMOOTH_REFINE_BUDGET = 512


@dataclass(frozen=True)
class Cone:
    """Strongly convex rational cone with canonical dual descriptions."""

    rays: tuple[IntVec, ...]
    normals: tuple[IntVec, ...]
    ambient_dim: int

    @cached_property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def multiplicity(self) -> int:
        """Lattice determinant of the rays of a simplicial cone."""
        if not self.is_simplicial:
            raise InputError("multiplicity requires a simplicial cone")
        return hermite_basis_det(self.rays)[1]

    def contains_point(self, v: Sequence) -> bool:
        v = vec(v)
        return all(dot(vec(u), v) >= 0 for u in self.normals)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains_point(r) for r in other.rays)

    def facet_normals(self) -> tuple[IntVec, ...]:
        """Normals whose hyperplane meets the cone in a proper facet."""
        return tuple(
            u
            for u in self.normals
            if any(idot(u, r) > 0 for r in self.rays)
        )

    def face(self, tight: Iterable[IntVec]) -> "Cone":
        """Intersection with the hyperplanes of the given normals."""
        extra = []
        for u in tight:
            extra.append(tuple(-x for x in u))
        return cone_from_normals(self.normals + tuple(extra))

    def __lt__(self, other):
        return (self.rays, self.normals) < (other.rays, other.normals)


@lru_cache(maxsize=None)
def _hull_pair(
    rays: tuple[IntVec, ...], dim: int
) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    dual_lin, dual_rays = cone_generators(rays, dim)
    normals = set(dual_rays)
    for l in dual_lin:
        normals.add(l)
        normals.add(tuple(-x for x in l))
    return cone_generators(tuple(sorted(normals)), dim)


@lru_cache(maxsize=None)
def _cone_from_primitive_rays(rays: tuple[IntVec, ...], dim: int) -> Cone:
    dual_lin, dual_rays = cone_generators(rays, dim)
    normals = set(dual_rays)
    for l in dual_lin:
        normals.add(l)
        normals.add(tuple(-x for x in l))
    normals = tuple(sorted(normals))
    lin, extreme = cone_generators(normals, dim)
    if lin:
        raise NotPointedError(lin[0])
    return Cone(tuple(sorted(extreme)), normals, dim)


def cone_from_generators(generators: Sequence[Sequence]) -> Cone:
    """Canonical cone spanned by rational generators (must be pointed)."""
    gens = list(generators)
    if gens:
        n = len(vec(gens[0]))
    else:
        raise InputError("cone needs generators or an ambient dimension")
    prim = set()
    for g in gens:
        gv = vec(g)
        if len(gv) != n:
            raise InputError("generator dimension mismatch")
        if is_zero_vec(gv):
            raise InputError("zero vector is not a valid cone generator")
        prim.add(primitive_direction(gv))
    return _cone_from_primitive_rays(tuple(sorted(prim)), n)


def origin_cone(ambient_dim: int) -> Cone:
    return _cone_from_primitive_rays((), ambient_dim)


def cone_from_normals(normals: Sequence[Sequence]) -> Cone:
    """Canonical cone {x : <u, x> >= 0 for all u} (must be pointed)."""
    ns = list(normals)
    if not ns:
        raise InputError("cone_from_normals needs at least one normal")
    n = len(vec(ns[0]))
    rows = tuple(
        sorted({primitive_direction(u) for u in ns if not is_zero_vec(vec(u))})
    )
    lin, extreme = cone_generators(rows, n)
    if lin:
        raise NotPointedError(lin[0])
    return _cone_from_primitive_rays(tuple(sorted(extreme)), n)


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.ambient_dim != c2.ambient_dim:
        raise InputError("cone intersection needs matching ambient dimensions")
    combined = c1.normals + c2.normals
    if not combined:
        # both are full space descriptions of the origin in dim 0; unreachable
        raise InputError("cones without normals are not supported")
    return cone_from_normals(combined)


def is_face(tau: Cone, sigma: Cone) -> bool:
    """Whether tau is a face of sigma."""
    if not sigma.contains_cone(tau):
        return False
    tight = [
        u
        for u in sigma.normals
        if all(idot(u, r) == 0 for r in tau.rays)
    ]
    return sigma.face(tight) == tau


@dataclass(frozen=True)
class Fan:
    """Fan stored through its maximal cones (canonically sorted)."""

    maximal_cones: tuple[Cone, ...]
    ambient_dim: int

    @staticmethod
    def make(cones: Iterable[Cone], ambient_dim: int) -> "Fan":
        unique = sorted(set(cones))
        for c in unique:
            if c.ambient_dim != ambient_dim:
                raise InputError("cone ambient dimension mismatch in fan")
        return Fan(tuple(unique), ambient_dim)

    def rays(self) -> tuple[IntVec, ...]:
        out = set()
        for c in self.maximal_cones:
            out.update(c.rays)
        return tuple(sorted(out))

    def support_hull(self) -> Cone:
        """Cone spanned by all rays; equals the support for convex fans.

        Raises NotPointedError when the hull contains a line; use
        support_pair for a comparison that is total on all fans.
        """
        rays = self.rays()
        if not rays:
            return origin_cone(self.ambient_dim)
        return cone_from_generators(rays)

    def support_pair(self) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
        """Canonical (lineality, extreme rays) of the cone spanned by all
        rays; structural equality of pairs is equality of hulls."""
        return _hull_pair(self.rays(), self.ambient_dim)

    def dim(self) -> int:
        return max((c.dim for c in self.maximal_cones), default=0)

    def check_valid(self) -> None:
        """Exhaustive fan test: pairwise intersections are faces of both."""
        cones = self.maximal_cones
        for a, b in combinations(cones, 2):
            t = intersect(a, b)
            if not (is_face(t, a) and is_face(t, b)):
                raise InputError(
                    f"fan invariant violated: {a.rays} meets {b.rays} in {t.rays}"
                )

    def check_covers_hull(self) -> None:
        """Verify that the maximal cones tile the convex hull of the rays.

        Every facet of a maximal cone must either lie on the boundary of the
        hull or be shared with another maximal cone; by convexity this rules
        out gaps.
        """
        hull = self.support_hull()
        d = self.dim()
        for c in self.maximal_cones:
            if c.dim != d:
                raise InputError("fan has maximal cones of mixed dimension")
            for u in c.facet_normals():
                facet = c.face([u])
                on_boundary = any(
                    all(idot(w, r) == 0 for r in facet.rays)
                    for w in hull.facet_normals()
                )
                if on_boundary:
                    continue
                shared = any(
                    other != c and other.contains_cone(facet)
                    for other in self.maximal_cones
                )
                if not shared:
                    raise InputError(
                        f"interior facet {facet.rays} of {c.rays} is uncovered"
                    )


def caratheodory_reduce(
    generators: Sequence[Sequence], costs: Sequence, lam: Sequence
) -> Vec:
    """Pivot a conic representation down to linearly independent support.

    Repeatedly picks a linear relation among the active generators, orients
    it so the cost cannot increase, and pivots out the coefficient with the
    smallest ratio.  The represented vector is preserved exactly; the cost
    never increases; the surviving generators are linearly independent.
    """
    gens = [vec(g) for g in generators]
    costs = vec(costs)
    lam = list(vec(lam))
    if not (len(gens) == len(costs) == len(lam)):
        raise InputError("generators, costs, and coefficients must align")
    if any(c < 0 for c in costs):
        raise InputError("costs must be nonnegative")
    if any(x < 0 for x in lam):
        raise InputError("coefficients must be nonnegative")
    while True:
        support = [i for i, x in enumerate(lam) if x != 0]
        if not support:
            break
        columns = tuple(
            tuple(gens[i][k] for i in support) for k in range(len(gens[0]))
        )
        kb = kernel_basis(columns)
        if not kb:
            break
        rel = kb[0]
        b = [Fraction(0)] * len(lam)
        for pos, i in enumerate(support):
            b[i] = rel[pos]
        s = sum(b[i] * costs[i] for i in support)
        if s < 0 or (s == 0 and not any(b[i] > 0 for i in support)):
            b = [-x for x in b]
        ratio = None
        j = None
        for i in support:
            if b[i] > 0:
                r = lam[i] / b[i]
                if ratio is None or r < ratio:
                    ratio, j = r, i
        assert j is not None, "oriented relation lost its positive entry"
        t = lam[j] / b[j]
        for i in support:
            lam[i] = lam[i] - t * b[i]
        lam[j] = Fraction(0)
    return tuple(lam)


def independent_subsets(
    generators: Sequence[Sequence], cap: int = INDEPENDENT_SUBSET_CAP
) -> tuple[tuple[int, ...], ...]:
    """All index sets whose generators are linearly independent (incl. the empty set)."""
    gens = [vec(g) for g in generators]
    if len(gens) > cap:
        raise CapExceededError(
            f"independent-subset enumeration capped at {cap} generators"
        )
    out = []

    def extend(prefix: list[int], start: int):
        out.append(tuple(prefix))
        for i in range(start, len(gens)):
            candidate = prefix + [i]
            if rank([gens[k] for k in candidate]) == len(candidate):
                extend(candidate, i + 1)

    extend([], 0)
    return tuple(sorted(out, key=lambda t: (len(t), t)))


def _span_basis(gens: list[Vec]):
    """Rational basis of span(gens) plus its pivot columns."""
    red, pivots = rref(gens)
    return [tuple(r) for r in red[: len(pivots)]], pivots


def _to_coords(v: Vec, pivots: list[int], basis: list[Vec]) -> Vec:
    coords = tuple(v[p] for p in pivots)
    recon = [Fraction(0)] * len(v)
    for c, b in zip(coords, basis):
        recon = [x + c * y for x, y in zip(recon, b)]
    if tuple(recon) != tuple(v):
        raise InputError("vector lies outside the span of the generators")
    return coords


def _from_coords(c: Sequence[Fraction], basis: list[Vec]) -> Vec:
    n = len(basis[0])
    out = [Fraction(0)] * n
    for t, b in zip(c, basis):
        out = [x + t * y for x, y in zip(out, b)]
    return tuple(out)


def linearity_fan(generators: Sequence[Sequence]) -> Fan:
    """Fan with support cone(generators) on which every nonnegative-cost
    representation function is linear.

    Construction: all hyperplanes spanned by (d-1)-element independent
    subsets of the generators cut the support cone into chambers; the
    full-dimensional chambers are the maximal cones.  Every cone spanned by
    an independent subset is a union of chambers, which forces linearity.
    """
    gens = [vec(g) for g in generators]
    if not gens:
        raise InputError("linearity fan needs at least one generator")
    n = len(gens[0])
    support = cone_from_generators(gens)
    d = support.dim
    if d <= 1:
        return Fan.make([support], n)
    if len(gens) > INDEPENDENT_SUBSET_CAP:
        raise CapExceededError(
            f"linearity fan capped at {INDEPENDENT_SUBSET_CAP} generators"
        )
    basis, pivots = _span_basis(gens)
    coord_gens = [_to_coords(g, pivots, basis) for g in gens]
    cuts = set()
    for subset in combinations(range(len(coord_gens)), d - 1):
        rows = [coord_gens[i] for i in subset]
        if rank(rows) != d - 1:
            continue
        kb = kernel_basis(rows) if rows else tuple()
        if rows:
            if len(kb) != 1:
                continue
            normal = primitive_direction(kb[0])
        else:
            continue
        cuts.add(normal)
    chambers = [cone_from_generators(coord_gens)]
    for u in sorted(cuts):
        mu = tuple(-x for x in u)
        nxt = set()
        for sigma in chambers:
            for half in (u, mu):
                piece = cone_from_normals(sigma.normals + (half,))
                if piece.dim == d:
                    nxt.add(piece)
        chambers = sorted(nxt)
    out = []
    for sigma in chambers:
        ambient_rays = [
            primitive_direction(_from_coords(r, basis)) for r in sigma.rays
        ]
        out.append(cone_from_generators(ambient_rays))
    return Fan.make(out, n)


def normal_fan(Q: HPolyhedron) -> Fan:
    """Outer normal fan of a polyhedron: one maximal cone per vertex,
    spanned by the normals of the constraints active there.

    The support consists of the directions bounded above on Q.  Raises
    NotPointedSupportError when a normal cone contains a line (which happens
    exactly when Q has a nontrivial affine hull or lineality aligned with
    active constraints).
    """
    V = dual_description(Q)
    if V.empty:
        raise EmptyPolyhedronError("normal fan of the empty polyhedron")
    n = Q.ambient_dim
    cones = set()
    for w in V.vertices:
        gens: list[Vec] = []
        for normal, offset in Q.inequalities:
            if dot(normal, w) == offset:
                gens.append(normal)
        for normal, _ in Q.equalities:
            gens.append(normal)
            gens.append(vec(tuple(-x for x in normal)))
        try:
            cones.add(
                cone_from_generators(gens) if gens else origin_cone(n)
            )
        except NotPointedError as exc:
            raise NotPointedSupportError(
                f"normal cone at {w} contains the line through {exc.line}"
            ) from exc
    return Fan.make(sorted(cones), n)


def common_refinement(fans: Sequence[Fan]) -> Fan:
    """Coarsest-by-construction fan refining every input fan.

    All inputs must share their support; cones of the result are the
    full-dimensional pairwise intersections.
    """
    fans = list(fans)
    if not fans:
        raise InputError("common refinement of no fans")
    n = fans[0].ambient_dim
    support = fans[0].support_pair()
    for f in fans[1:]:
        if f.ambient_dim != n:
            raise InputError("fan ambient dimension mismatch")
        if f.support_pair() != support:
            raise InputError("fans do not share a common support")
    d = rank(support[0] + support[1])
    pieces = list(fans[0].maximal_cones)
    for f in fans[1:]:
        nxt = set()
        for a in pieces:
            for b in f.maximal_cones:
                t = intersect(a, b)
                if t.dim == d:
                    nxt.add(t)
        pieces = sorted(nxt)
    if not pieces:
        pieces = [origin_cone(n)]  # all inputs are the degenerate origin fan
    return Fan.make(pieces, n)


def is_smooth(c: Cone) -> bool:
    """Simplicial with primitive rays extending to a lattice basis."""
    return c.is_simplicial and hermite_basis_det(c.rays)[1] == 1


def refines(fine: Fan, coarse: Fan) -> bool:
    """Same support and every maximal cone of fine inside a cone of coarse."""
    if fine.ambient_dim != coarse.ambient_dim:
        return False
    if fine.support_pair() != coarse.support_pair():
        return False
    for c in fine.maximal_cones:
        if not any(big.contains_cone(c) for big in coarse.maximal_cones):
            return False
    return True


def _pull_triangulate(c: Cone) -> list[Cone]:
    if c.is_simplicial:
        return [c]
    v = c.rays[0]  # lex-least ray; hereditary, so shared faces agree
    pieces = []
    for u in c.facet_normals():
        if idot(u, v) == 0:
            continue
        facet = c.face([u])
        for part in _pull_triangulate(facet):
            pieces.append(cone_from_generators(part.rays + (v,)))
    return pieces


def _parallelepiped_points(c: Cone) -> list[IntVec]:
    """Nonzero primitive lattice points with all ray-coordinates in [0, 1)."""
    rays = c.rays
    n = c.ambient_dim
    lows = [sum(min(0, r[i]) for r in rays) for i in range(n)]
    highs = [sum(max(0, r[i]) for r in rays) for i in range(n)]
    matrix = tuple(tuple(Fraction(r[i]) for r in rays) for i in range(n))
    found = set()

    def scan(idx: int, point: list[int]):
        if idx == n:
            if all(x == 0 for x in point):
                return
            sol = linear_solve(matrix, vec(point))
            if sol is None:
                return
            lam = sol.particular
            if all(0 <= t < 1 for t in lam):
                found.add(primitive_direction(vec(point)))
            return
        for x in range(lows[idx], highs[idx] + 1):
            point.append(x)
            scan(idx + 1, point)
            point.pop()

    scan(0, [])
    return sorted(found)


def _stellar_subdivide(fan: Fan, x: IntVec) -> Fan:
    """Stellar subdivision of a simplicial fan at a primitive lattice point."""
    out = []
    for c in fan.maximal_cones:
        if not c.contains_point(x):
            out.append(c)
            continue
        matrix = tuple(
            tuple(Fraction(r[i]) for r in c.rays) for i in range(c.ambient_dim)
        )
        sol = linear_solve(matrix, vec(x))
        assert sol is not None, "contained point failed to decompose"
        lam = sol.particular
        replaced = False
        for i, t in enumerate(lam):
            if t != 0:
                rest = tuple(r for k, r in enumerate(c.rays) if k != i)
                out.append(cone_from_generators(rest + (x,)))
                replaced = True
        assert replaced
    return Fan.make(out, fan.ambient_dim)


def smooth_refine(
    f: Fan,
    dim_cap: int = SMOOTH_REFINE_DIM_CAP,
    budget: int = SMOOTH_REFINE_BUDGET,
) -> Fan:
    """Deterministic smooth refinement with the same support.

    Non-simplicial cones are first triangulated by pulling at their
    lexicographically least rays; afterwards the worst non-smooth cone is
    stellarly subdivided at the primitive parallelepiped point minimizing
    the resulting maximal multiplicity (lexicographic tie-breaks), until all
    cones are smooth.
    """
    if f.ambient_dim > dim_cap:
        raise CapExceededError(
            f"smooth refinement capped at ambient dimension {dim_cap}"
        )
    cones = []
    for c in f.maximal_cones:
        cones.extend(_pull_triangulate(c))
    fan = Fan.make(cones, f.ambient_dim)
    for _ in range(budget):
        rough = [c for c in fan.maximal_cones if not is_smooth(c)]
        if not rough:
            return fan
        target = max(rough, key=lambda c: (c.multiplicity(), c.rays))
        best = None
        for x in _parallelepiped_points(target):
            trial = _stellar_subdivide(fan, x)
            worst = max(
                (
                    c.multiplicity()
                    for c in trial.maximal_cones
                    if c not in fan.maximal_cones
                ),
                default=1,
            )
            if best is None or (worst, x) < (best[0], best[1]):
                best = (worst, x, trial)
        assert best is not None, "non-smooth cone without subdivision points"
        fan = best[2]
    worst = max(c.multiplicity() for c in fan.maximal_cones if not is_smooth(c))
    raise BudgetExceededError(
        f"smooth refinement stopped after {budget} subdivisions; "
        f"{len(fan.maximal_cones)} cones, worst multiplicity {worst}"
    )


def is_cost_linear_on(
    generators: Sequence[Sequence],
    costs: Sequence,
    cone: Cone,
    sample_count: int = 8,
    seed: int = 0,
) -> bool:
    """Whether the minimum representation cost is linear on the cone.

    Evaluates the cost at every ray generator and at deterministic
    pseudo-random nonnegative rational combinations; linearity must hold
    bit-exactly.  NotInConeError from an evaluation signals that the cone
    is not contained in the span of the generators.
    """
    if not cone.rays:
        return True
    ray_values = [
        representation_cost(generators, costs, vec(r)).value for r in cone.rays
    ]
    rng = random.Random(seed)
    combos = [tuple(Fraction(1) for _ in cone.rays)]
    for _ in range(sample_count):
        combos.append(
            tuple(
                Fraction(rng.randint(0, 8), rng.randint(1, 4))
                for _ in cone.rays
            )
        )
    for ts in combos:
        point = [Fraction(0)] * cone.ambient_dim
        for t, r in zip(ts, cone.rays):
            point = [a + t * b for a, b in zip(point, r)]
        expected = sum(
            (t * v for t, v in zip(ts, ray_values)), Fraction(0)
        )
        actual = representation_cost(generators, costs, tuple(point)).value
        if actual != expected:
            return False
    return True

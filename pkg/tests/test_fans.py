import random
from fractions import Fraction

import pytest

from helpers import random_generators

from conefan.errors import (
    CapExceededError,
    EmptyPolyhedronError,
    InputError,
    NotPointedError,
    NotPointedSupportError,
)
from conefan.fans import (
    Fan,
    caratheodory_reduce,
    common_refinement,
    cone_from_generators,
    independent_subsets,
    intersect,
    is_cost_linear_on,
    is_face,
    is_smooth,
    linearity_fan,
    normal_fan,
    origin_cone,
    refines,
    smooth_refine,
)
from conefan.lp import price_polyhedron, representation_cost
from conefan.polyhedra import HPolyhedron
from conefan.rational import vec

V3 = [(1, 0), (0, 1), (1, 1)]


def quadrant():
    return cone_from_generators([(1, 0), (0, 1)])


def test_cone_from_generators():
    c = cone_from_generators(V3)
    assert c.rays == ((0, 1), (1, 0))
    assert set(c.normals) == {(0, 1), (1, 0)}
    assert cone_from_generators([(2, 0)]).rays == ((1, 0),)
    with pytest.raises(NotPointedError) as err:
        cone_from_generators([(1, 0), (-1, 0)])
    assert err.value.line in ((1, 0), (-1, 0))


def test_cone_lower_dimensional():
    c = cone_from_generators([(1, 1, 0)])
    assert c.dim == 1
    assert c.contains_point((2, 2, 0))
    assert not c.contains_point((1, 2, 0))
    assert not c.contains_point((-1, -1, 0))


def test_intersect():
    a = quadrant()
    b = cone_from_generators([(1, 1), (-1, 1)])
    assert intersect(a, b).rays == ((0, 1), (1, 1))
    assert intersect(a, a) == a
    opp = cone_from_generators([(-1, -1)])
    assert intersect(a, opp).rays == ()


def test_caratheodory_reduce_pivot():
    out = caratheodory_reduce(V3, (1, 1, 1), (1, 1, 1))
    assert out == vec([0, 0, 2])
    # independent support is a fixed point
    assert caratheodory_reduce(V3, (1, 1, 1), out) == out
    assert caratheodory_reduce(V3, (1, 1, 1), (1, 1, 0)) == vec([1, 1, 0])
    assert caratheodory_reduce(V3, (1, 1, 1), (0, 0, 0)) == vec([0, 0, 0])


def test_caratheodory_random_battery():
    rng = random.Random(77)
    matched = 0
    total = 0
    for _ in range(500):
        r = rng.randint(2, 6)
        n = rng.randint(1, 4)
        gens = random_generators(rng, r, n)
        costs = [Fraction(rng.randint(0, 9), rng.randint(1, 3)) for _ in range(r)]
        lam = [Fraction(rng.randint(1, 5), rng.randint(1, 2)) for _ in range(r)]
        target = tuple(sum(l * g[i] for l, g in zip(lam, gens)) for i in range(n))
        before = sum(l * c for l, c in zip(lam, costs))
        out = caratheodory_reduce(gens, costs, lam)
        after = sum(l * c for l, c in zip(out, costs))
        assert all(x >= 0 for x in out)
        assert after <= before
        reproduced = tuple(
            sum(l * g[i] for l, g in zip(out, gens)) for i in range(n)
        )
        assert reproduced == target
        support = [gens[i] for i, x in enumerate(out) if x != 0]
        from conefan.linalg import rank

        assert rank(support) == len(support)
        assert caratheodory_reduce(gens, costs, out) == out
        optimum = representation_cost(gens, costs, target).value
        assert after >= optimum
        total += 1
        if after == optimum:
            matched += 1
    assert matched >= int(0.95 * total), (matched, total)


def test_independent_subsets():
    subs = independent_subsets(V3)
    assert len(subs) == 7
    assert () in subs and (0, 1, 2) not in subs
    assert independent_subsets([(1, 0), (2, 0)]) == ((), (0,), (1,))
    assert independent_subsets([]) == ((),)
    with pytest.raises(CapExceededError):
        independent_subsets([(1,)] * 13)


def test_linearity_fan_examples():
    f = linearity_fan(V3)
    assert [c.rays for c in f.maximal_cones] == [
        ((0, 1), (1, 1)),
        ((1, 0), (1, 1)),
    ]
    f2 = linearity_fan([(1, 0), (0, 1)])
    assert [c.rays for c in f2.maximal_cones] == [((0, 1), (1, 0))]
    f3 = linearity_fan([(2, 4)])
    assert [c.rays for c in f3.maximal_cones] == [((1, 2),)]


def test_linearity_fan_covers_independent_cones():
    rng = random.Random(15)
    for _ in range(10):
        r = rng.randint(2, 5)
        n = rng.randint(2, 3)
        gens = random_generators(rng, r, n)
        f = linearity_fan(gens)
        f.check_valid()
        f.check_covers_hull()
        assert f.support_hull() == cone_from_generators(gens)
        # every full-dimensional independent-subset cone is a union of fan cones
        d = f.dim()
        for subset in independent_subsets(gens):
            if not subset:
                continue
            sub = cone_from_generators([gens[i] for i in subset])
            if sub.dim != d:
                continue
            covered = [c for c in f.maximal_cones if sub.contains_cone(c)]
            total = sum(1 for c in f.maximal_cones)
            inside = Fan.make(covered, f.ambient_dim)
            assert inside.maximal_cones, "independent cone contains no chamber"
            assert inside.support_hull() == sub


def test_normal_fan_examples():
    nf = normal_fan(price_polyhedron(V3, (1, 1, 1)))
    assert [c.rays for c in nf.maximal_cones] == [
        ((0, 1), (1, 1)),
        ((1, 0), (1, 1)),
    ]
    assert nf.support_hull() == quadrant()
    whole = normal_fan(HPolyhedron((), (), 2))
    assert [c.rays for c in whole.maximal_cones] == [()]
    with pytest.raises(NotPointedSupportError):
        normal_fan(
            HPolyhedron.from_rows(equalities=[((1, 0), 1), ((0, 1), 1)])
        )
    with pytest.raises(EmptyPolyhedronError):
        normal_fan(HPolyhedron.make_empty(2))


def test_normal_fan_halfplane_support():
    half = HPolyhedron.from_rows([((1, 0), 0)])
    nf = normal_fan(half)
    assert [c.rays for c in nf.maximal_cones] == [((1, 0),)]


def test_common_refinement():
    split = linearity_fan(V3)
    quad_fan = linearity_fan([(1, 0), (0, 1)])
    cr = common_refinement([quad_fan, split])
    assert cr == split
    assert common_refinement([split]) == split
    fa = linearity_fan([(1, 0), (0, 1), (1, 2)])
    fb = linearity_fan([(1, 0), (0, 1), (2, 1)])
    cr2 = common_refinement([fa, fb])
    assert len(cr2.maximal_cones) == 3
    cr2.check_valid()
    cr2.check_covers_hull()
    with pytest.raises(InputError):
        common_refinement([split, linearity_fan([(1, 0), (1, 1)])])


def test_is_smooth():
    assert is_smooth(quadrant())
    assert not is_smooth(cone_from_generators([(1, 0), (1, 2)]))
    assert is_smooth(cone_from_generators(V3))
    assert is_smooth(origin_cone(3))
    assert is_smooth(cone_from_generators([(1, 1, 0)]))


def test_smooth_refine_examples():
    f = Fan.make([cone_from_generators([(1, 0), (1, 2)])], 2)
    sf = smooth_refine(f)
    assert [c.rays for c in sf.maximal_cones] == [
        ((1, 0), (1, 1)),
        ((1, 1), (1, 2)),
    ]
    already = linearity_fan(V3)
    assert smooth_refine(already) == already
    f3 = Fan.make([cone_from_generators([(1, 0), (1, 3)])], 2)
    sf3 = smooth_refine(f3)
    assert [c.rays for c in sf3.maximal_cones] == [
        ((1, 0), (1, 1)),
        ((1, 1), (1, 2)),
        ((1, 2), (1, 3)),
    ]
    with pytest.raises(CapExceededError):
        smooth_refine(Fan.make([origin_cone(5)], 5))


def test_smooth_refine_properties_2d():
    for a in range(1, 8):
        for b in range(1, 8):
            base = cone_from_generators([(1, 0), (a, b)])
            if base.dim != 2:
                continue
            f = Fan.make([base], 2)
            sf = smooth_refine(f)
            assert all(is_smooth(c) for c in sf.maximal_cones)
            assert refines(sf, f)
            sf.check_valid()
            sf.check_covers_hull()


def test_smooth_refine_3d():
    for k in (2, 3, 4, 5):
        base = cone_from_generators([(1, 0, 0), (0, 1, 0), (1, 1, k)])
        f = Fan.make([base], 3)
        sf = smooth_refine(f)
        assert all(is_smooth(c) for c in sf.maximal_cones)
        assert refines(sf, f)
        sf.check_valid()


def test_smooth_refine_non_simplicial():
    base = cone_from_generators([(1, 0, 0), (0, 1, 0), (0, 1, 1), (1, 0, 1)])
    assert not base.is_simplicial
    sf = smooth_refine(Fan.make([base], 3))
    assert all(is_smooth(c) for c in sf.maximal_cones)
    assert refines(sf, Fan.make([base], 3))
    sf.check_valid()
    sf.check_covers_hull()


def test_refines():
    split = linearity_fan(V3)
    quad_fan = Fan.make([quadrant()], 2)
    assert refines(split, quad_fan)
    assert not refines(quad_fan, split)
    assert refines(split, split)


def test_is_cost_linear_on():
    split = cone_from_generators([(1, 0), (1, 1)])
    assert is_cost_linear_on(V3, (1, 1, 1), split)
    assert not is_cost_linear_on(V3, (1, 1, 1), quadrant())
    assert is_cost_linear_on(V3, (0, 0, 0), quadrant())


def test_linearity_holds_on_every_chamber():
    rng = random.Random(4)
    gen_sets = [
        V3,
        [(1, 0), (0, 1), (1, 2), (2, 1)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
        [(2, 1), (1, 2)],
        [(1, 1), (1, 3), (3, 1)],
    ]
    for gens in gen_sets:
        fan = linearity_fan(gens)
        for trial in range(12):
            costs = tuple(
                Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in gens
            )
            for cone in fan.maximal_cones:
                assert is_cost_linear_on(
                    gens, costs, cone, sample_count=4, seed=trial
                )


def test_cross_construction_refinement():
    rng = random.Random(6)
    gen_sets = [V3, [(1, 0), (0, 1), (1, 2)], [(1, 0), (1, 1), (1, 3)]]
    for gens in gen_sets:
        fan = linearity_fan(gens)
        for _ in range(8):
            costs = tuple(
                Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in gens
            )
            nf = normal_fan(price_polyhedron(gens, costs))
            assert nf.support_hull() == cone_from_generators(gens)
            gen_rays = {cone_from_generators([g]).rays[0] for g in gens}
            for c in nf.maximal_cones:
                for r in c.rays:
                    assert r in gen_rays
            assert refines(fan, nf)


def test_fan_validity_exhaustive():
    fans = [
        linearity_fan(V3),
        linearity_fan([(1, 0), (0, 1), (1, 2), (2, 1)]),
        normal_fan(price_polyhedron(V3, (1, 1, 1))),
        smooth_refine(Fan.make([cone_from_generators([(1, 0), (2, 5)])], 2)),
    ]
    for f in fans:
        f.check_valid()
        f.check_covers_hull()


def test_is_face():
    c = quadrant()
    ray = cone_from_generators([(1, 0)])
    assert is_face(ray, c)
    assert is_face(origin_cone(2), c)
    assert is_face(c, c)
    diag = cone_from_generators([(1, 1)])
    assert not is_face(diag, c)


def test_smooth_refine_shared_face_subdivided_consistently():
    # two cones glued along a non-smooth 2-face; the subdivision point lies
    # on the shared face, so both incident cones must split
    upper = cone_from_generators([(1, 0, 0), (1, 2, 0), (0, 0, 1)])
    lower = cone_from_generators([(1, 0, 0), (1, 2, 0), (0, 0, -1)])
    f = Fan.make([upper, lower], 3)
    f.check_valid()
    sf = smooth_refine(f)
    assert all(is_smooth(c) for c in sf.maximal_cones)
    assert len(sf.maximal_cones) == 4
    assert refines(sf, f)
    sf.check_valid()


def test_linearity_fan_lower_dimensional_support():
    gens = [(1, 0, 1), (0, 1, 1), (1, 1, 2)]
    f = linearity_fan(gens)
    assert [c.rays for c in f.maximal_cones] == [
        ((0, 1, 1), (1, 1, 2)),
        ((1, 0, 1), (1, 1, 2)),
    ]
    f.check_valid()
    for cone in f.maximal_cones:
        assert is_cost_linear_on(gens, (1, 1, 1), cone)
    whole = cone_from_generators(gens)
    assert not is_cost_linear_on(gens, (1, 3, 2), whole)


def test_common_refinement_three_fans_preserves_support():
    fans = [
        linearity_fan([(1, 0), (0, 1), (1, 1)]),
        linearity_fan([(1, 0), (0, 1), (1, 2)]),
        linearity_fan([(1, 0), (0, 1), (2, 1)]),
    ]
    cr = common_refinement(fans)
    support = fans[0].support_pair()
    assert cr.support_pair() == support
    for f in fans:
        assert f.support_pair() == support
        assert refines(cr, f)
    assert len(cr.maximal_cones) == 4
    cr.check_valid()
    cr.check_covers_hull()

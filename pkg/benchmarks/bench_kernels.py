#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times the three kernel entry points on representative workloads (exact
row reduction, two-phase simplex batches, and full dual descriptions,
whose inner loop is dd_step), then an end-to-end closure verification.
Both backends produce bit-identical results; only the wall time differs.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

import conefan._kernel as kern
from conefan._kernel import pykernel

try:
    from conefan._kernel import fastkernel
except ImportError:
    fastkernel = None


def _random_matrix(rng, rows, cols):
    return [
        [Fraction(rng.randint(-99, 99), rng.randint(1, 30)) for _ in range(cols)]
        for _ in range(rows)
    ]


def bench_rref(repeat):
    rng = random.Random(1)
    mats = [_random_matrix(rng, 12, 14) for _ in range(30 * repeat)]

    def run():
        for m in mats:
            kern.rref_frac([row[:] for row in m])

    return run


def bench_simplex(repeat):
    rng = random.Random(2)
    from conefan import _simplex

    instances = []
    for _ in range(40 * repeat):
        m, n = 6, 12
        A = [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(m)]
        b = [Fraction(rng.randint(0, 9)) for _ in range(m)]
        c = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        instances.append((c, A, b))

    def run():
        for c, A, b in instances:
            _simplex.solve_standard(c, A, b)

    return run


def bench_dual_description(repeat):
    rng = random.Random(3)
    from conefan.polyhedra import HPolyhedron, _dd_cached, dual_description

    systems = []
    for _ in range(12 * repeat):
        dim = 6
        rows = []
        for _ in range(14):
            normal = [Fraction(rng.randint(-5, 5)) for _ in range(dim)]
            if all(x == 0 for x in normal):
                normal[0] = Fraction(1)
            rows.append((tuple(normal), Fraction(rng.randint(0, 9))))
        systems.append(HPolyhedron.from_rows(rows, (), dim))

    def run():
        # clear memoization so every round really recomputes
        _dd_cached.cache_clear()
        from conefan._dd import cone_generators

        cone_generators.cache_clear()
        for P in systems:
            dual_description(P)

    return run


def bench_verify(repeat):
    from conefan.graded import GradedSystem, MonomialIdeal, verify_closure_identity
    import conefan.graded as graded_mod
    import conefan.lp as lp_mod
    from conefan.polyhedra import _dd_cached
    from conefan._dd import cone_generators

    MI = MonomialIdeal.from_exponents

    def run():
        for cache in (
            graded_mod.expand_degree,
            graded_mod.asymptotic_valuation,
            graded_mod.asymptotic_newton,
            graded_mod.newton_polyhedron,
            graded_mod.newton_hform,
            graded_mod.ideal_product,
            graded_mod.ideal_power,
            graded_mod._representations,
            graded_mod._degree_newton_hform,
            graded_mod._degree_valuation,
            lp_mod._representation_cost_cached,
        ):
            cache.cache_clear()
        _dd_cached.cache_clear()
        cone_generators.cache_clear()
        for _ in range(repeat):
            system = GradedSystem.create(
                3,
                3,
                [(1, 3, 1), (3, 1, 1), (1, 3, 3)],
                [
                    MI(3, [(2, 3, 2), (3, 1, 0)]),
                    MI(3, [(0, 1, 4)]),
                    MI(3, [(2, 1, 4), (3, 0, 3), (3, 2, 0)]),
                ],
            )
            verify_closure_identity(system, power_bound=2, power_checks=3)

    return run


def time_with_backend(setup, backend):
    saved = (kern.rref_frac, kern.simplex_core, kern.dd_step)
    kern.rref_frac = backend.rref_frac
    kern.simplex_core = backend.simplex_core
    kern.dd_step = backend.dd_step
    try:
        run = setup
        t0 = time.perf_counter()
        run()
        return time.perf_counter() - t0
    finally:
        kern.rref_frac, kern.simplex_core, kern.dd_step = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    if fastkernel is None:
        print("compiled kernel not built; run pip install -e . first")
        return 1

    benches = [
        ("rref 12x14 rationals x30", bench_rref(args.repeat)),
        ("simplex 6x12 two-phase x40", bench_simplex(args.repeat)),
        ("dual description dim-6 x12", bench_dual_description(args.repeat)),
        ("closure verification pipeline", bench_verify(args.repeat)),
    ]
    print(f"{'benchmark':<34}{'python':>10}{'cython':>10}{'speedup':>9}")
    for name, run in benches:
        t_py = time_with_backend(run, pykernel)
        t_cy = time_with_backend(run, fastkernel)
        print(f"{name:<34}{t_py*1000:>8.1f}ms{t_cy*1000:>8.1f}ms{t_py/t_cy:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

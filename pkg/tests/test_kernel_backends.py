"""Cross-backend agreement: the compiled kernel must match the pure-Python
reference bit-exactly, and the import-time selector must honor the
CONEFAN_PURE_PYTHON override."""

import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from conefan._kernel import BACKEND, pykernel

try:
    from conefan._kernel import fastkernel
except ImportError:
    fastkernel = None

needs_ext = pytest.mark.skipif(
    fastkernel is None, reason="compiled kernel not built"
)


@needs_ext
def test_rref_bit_identical():
    rng = random.Random(101)
    for _ in range(200):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 7)
        rows = [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nc)]
            for _ in range(nr)
        ]
        a = pykernel.rref_frac([r[:] for r in rows])
        b = fastkernel.rref_frac([r[:] for r in rows])
        assert a[0] == b[0]
        assert a[1] == b[1]


@needs_ext
def test_simplex_bit_identical_through_solver():
    # drive both backends through the full two-phase solver
    import conefan._kernel as kern
    from conefan import _simplex

    rng = random.Random(55)
    instances = []
    for _ in range(120):
        m = rng.randint(1, 4)
        n = rng.randint(1, 6)
        A = [[Fraction(rng.randint(-6, 6)) for _ in range(n)] for _ in range(m)]
        b = [Fraction(rng.randint(-6, 6)) for _ in range(m)]
        c = [Fraction(rng.randint(-6, 6)) for _ in range(n)]
        instances.append((c, A, b))

    def run_all():
        out = []
        for c, A, b in instances:
            res = _simplex.solve_standard(c, A, b)
            out.append((res.status, res.x, res.y, res.ray, res.value))
        return out

    original = (kern.simplex_core, kern.rref_frac, kern.dd_step)
    try:
        kern.simplex_core = pykernel.simplex_core
        slow = run_all()
        kern.simplex_core = fastkernel.simplex_core
        fast = run_all()
    finally:
        kern.simplex_core, kern.rref_frac, kern.dd_step = original
    assert slow == fast


@needs_ext
def test_dd_step_bit_identical():
    rng = random.Random(77)
    for _ in range(150):
        dim = rng.randint(2, 5)
        rays, zsets = [], []
        for _ in range(rng.randint(1, 8)):
            r = tuple(rng.randint(-4, 4) for _ in range(dim))
            if all(x == 0 for x in r):
                continue
            rays.append(r)
            zsets.append(rng.getrandbits(6))
        normal = [rng.randint(-3, 3) for _ in range(dim)]
        vals = [sum(x * y for x, y in zip(normal, r)) for r in rays]
        a = pykernel.dd_step(list(rays), list(zsets), list(vals), 1 << 6)
        b = fastkernel.dd_step(list(rays), list(zsets), list(vals), 1 << 6)
        assert [tuple(r) for r in a[0]] == [tuple(r) for r in b[0]]
        assert a[1] == b[1]


def test_backend_name_reported():
    assert BACKEND in ("cython", "python")


def test_pure_python_override():
    env = dict(os.environ)
    env["CONEFAN_PURE_PYTHON"] = "1"
    proc = subprocess.run(
        [
            sys.executable,
            "-c",
            "from conefan._kernel import BACKEND; print(BACKEND)",
        ],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.stdout.strip() == "python"


@needs_ext
def test_full_pipeline_matches_across_backends():
    script = (
        "import json\n"
        "from conefan.graded import GradedSystem, MonomialIdeal, "
        "verify_closure_identity\n"
        "MI = MonomialIdeal.from_exponents\n"
        "sys_w = GradedSystem.create(2, 2, [(1,0),(0,1),(1,1)],"
        "[MI(2,[(1,0)]), MI(2,[(0,1)]), MI(2,[(1,1),(2,0)])])\n"
        "rep = verify_closure_identity(sys_w, power_bound=3)\n"
        "print(json.dumps(rep.to_dict(), sort_keys=True))\n"
    )
    outs = {}
    for label, extra in (("fast", {}), ("pure", {"CONEFAN_PURE_PYTHON": "1"})):
        env = dict(os.environ)
        env.update(extra)
        proc = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=env
        )
        assert proc.returncode == 0, proc.stderr
        outs[label] = proc.stdout
    assert outs["fast"] == outs["pure"]

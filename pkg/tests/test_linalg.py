import random
from fractions import Fraction

import pytest

from conefan.errors import InputError
from conefan.linalg import (
    hermite_basis_det,
    kernel_basis,
    linear_solve,
    primitive,
    rank,
)
from conefan.rational import (
    PLUS_INFINITY,
    dot,
    frac,
    mat,
    primitive_direction,
    vec,
)


def test_linear_solve_identity():
    sol = linear_solve(mat([[1, 0], [0, 1]]), vec([3, 5]))
    assert sol.particular == vec([3, 5])
    assert sol.kernel_basis == ()


def test_linear_solve_underdetermined():
    sol = linear_solve(mat([[1, 1]]), vec([2]))
    assert sol.particular == vec([2, 0])
    assert sol.kernel_basis == (vec([1, -1]),)


def test_linear_solve_inconsistent():
    assert linear_solve(mat([[1], [1]]), vec([1, 2])) is None


def test_linear_solve_roundtrip_random():
    rng = random.Random(7)
    for _ in range(150):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        A = mat(
            [
                [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
                for _ in range(m)
            ]
        )
        x = vec([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)])
        b = vec([dot(row, x) for row in A])
        sol = linear_solve(A, b)
        assert sol is not None
        assert all(dot(row, sol.particular) == bi for row, bi in zip(A, b))
        for k in sol.kernel_basis:
            assert all(dot(row, k) == 0 for row in A)
        assert len(sol.kernel_basis) == n - rank(A)


def test_hermite_examples():
    assert hermite_basis_det([(1, 0), (0, 1)]) == (2, 1)
    assert hermite_basis_det([(1, 0), (1, 2)]) == (2, 2)
    assert hermite_basis_det([(1, 1), (2, 2)]) == (1, 1)
    assert hermite_basis_det([]) == (0, 1)


def test_hermite_unimodular_invariance():
    rng = random.Random(3)
    for _ in range(60):
        m = rng.randint(1, 3)
        n = rng.randint(2, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        base = hermite_basis_det(rows)
        work = [r[:] for r in rows]
        for _ in range(6):
            op = rng.randrange(3)
            i = rng.randrange(m)
            if op == 0:
                work[i] = [-x for x in work[i]]
            elif op == 1 and m > 1:
                j = rng.randrange(m)
                if j != i:
                    c = rng.randint(-3, 3)
                    work[i] = [a + c * b for a, b in zip(work[i], work[j])]
            else:
                j = rng.randrange(m)
                work[i], work[j] = work[j], work[i]
        assert hermite_basis_det(work) == base


def test_primitive():
    assert primitive((2, 4)) == (1, 2)
    assert primitive((1, 1)) == (1, 1)
    assert primitive((-3, 6)) == (-1, 2)
    with pytest.raises(InputError):
        primitive((0, 0))
    assert primitive_direction((Fraction(1, 2), Fraction(3, 4))) == (2, 3)


def test_exact_arithmetic_roundtrips():
    rng = random.Random(11)
    for _ in range(300):
        a = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        b = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a


def test_plus_infinity_ordering():
    assert PLUS_INFINITY > Fraction(10**9)
    assert not (PLUS_INFINITY < Fraction(0))
    assert PLUS_INFINITY + Fraction(3) == PLUS_INFINITY
    assert PLUS_INFINITY == PLUS_INFINITY
    assert Fraction(1, 2) < PLUS_INFINITY


def test_frac_rejects_floats():
    with pytest.raises(InputError):
        frac(0.5)


def test_kernel_basis_sign_convention():
    kb = kernel_basis(mat([[1, 1]]))
    assert kb == (vec([1, -1]),)

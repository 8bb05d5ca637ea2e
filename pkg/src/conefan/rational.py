"""Exact scalars and vector helpers shared across the package.

All geometry runs on `fractions.Fraction`; vectors and matrices are plain
tuples of Fractions (or of ints where integrality is an invariant, e.g.
primitive ray generators).  Floats are rejected everywhere.

A distinguished PlusInfinity singleton serves as the valuation of the zero
ideal.  It deliberately lives outside the scalar type used by the geometry
so that polyhedral code stays total over Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InputError

Scalar = Union[int, str, Fraction]
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]
IntVec = tuple[int, ...]


def frac(x: Scalar) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to Fraction (floats rejected)."""
    if isinstance(x, bool):
        raise InputError(f"not a rational scalar: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"not a rational scalar: {x!r}")


def vec(entries: Iterable[Scalar]) -> Vec:
    return tuple(frac(x) for x in entries)


def mat(rows: Iterable[Iterable[Scalar]]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise InputError("matrix rows have differing lengths")
    return out


def vzero(n: int) -> Vec:
    return (Fraction(0),) * n


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise InputError(f"dimension mismatch in dot: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def idot(u: Sequence[int], v: Sequence[int]) -> int:
    """Integer dot product; used on hot paths where both sides are integral."""
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def vscale(t, u: Sequence) -> Vec:
    return tuple(t * a for a in u)


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def ivec(entries: Iterable) -> IntVec:
    """Coerce to an integer vector, rejecting non-integral entries."""
    out = []
    for x in entries:
        f = frac(x) if not isinstance(x, int) else Fraction(x)
        if f.denominator != 1:
            raise InputError(f"entry {x!r} is not an integer")
        out.append(f.numerator)
    return tuple(out)


def primitive_int_vector(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise InputError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def primitive_direction(v: Sequence) -> IntVec:
    """Primitive integer vector on the same ray as a rational vector."""
    fr = [frac(x) for x in v]
    scale = 1
    for x in fr:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return primitive_int_vector(tuple(int(x * scale) for x in fr))


def fmt(x) -> str:
    """Render an exact scalar as p/q (integers without the denominator)."""
    return str(x)


def fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(fmt(x) for x in v) + ")"


class PlusInfinity:
    """Valuation of the zero ideal; compares above every finite rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "+inf"

    def __eq__(self, other):
        return isinstance(other, PlusInfinity)

    def __hash__(self):
        return hash("conefan.PlusInfinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, PlusInfinity)

    def __gt__(self, other):
        return not isinstance(other, PlusInfinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, PlusInfinity) or other > 0:
            return self
        raise InputError("PlusInfinity only scales by positive factors")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if other > 0:
            return self
        raise InputError("PlusInfinity only divides by positive factors")


PLUS_INFINITY = PlusInfinity()


def is_finite(x) -> bool:
    return not isinstance(x, PlusInfinity)

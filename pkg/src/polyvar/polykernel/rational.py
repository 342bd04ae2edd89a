"""Scalar helpers: everything lives over ``fractions.Fraction``."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple of Fraction


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar: {value!r}")


def vec(values: Iterable) -> tuple:
    return tuple(as_scalar(v) for v in values)


def zero(dim: int) -> tuple:
    return (Fraction(0),) * dim


def dot(a: Sequence, b: Sequence):
    # one normalisation at the end instead of one per term
    n, d = 0, 1
    for x, y in zip(a, b):
        pd = x.denominator * y.denominator
        pn = x.numerator * y.numerator
        if pd == 1:
            n += pn * d
        else:
            n = n * pd + pn * d
            d *= pd
    return Fraction(n, d)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(k, a: Sequence) -> tuple:
    return tuple(k * x for x in a)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive_int(a: Sequence) -> tuple:
    """Smallest integer vector with the same direction (sign preserved)."""
    fr = [x if isinstance(x, (int, Fraction)) else as_scalar(x) for x in a]
    den = lcm(*(x.denominator for x in fr))
    ints = [x.numerator * (den // x.denominator) for x in fr]
    g = gcd(*ints)
    if g <= 1:
        return tuple(ints)
    return tuple(v // g for v in ints)


def canonical_line(a: Sequence) -> tuple:
    """Primitive integer vector with first nonzero entry positive."""
    p = primitive_int(a)
    for v in p:
        if v != 0:
            return p if v > 0 else tuple(-x for x in p)
    return p


def to_fractions(a: Sequence) -> tuple:
    return tuple(Fraction(x) for x in a)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows if any(x != 0 for x in r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], dim: int) -> list[tuple]:
    """Basis of {x : row . x = 0 for every row}."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(tuple(v))
    return basis


def fmt(x) -> str:
    """Exact string form used in reports (``"p/q"`` or integer)."""
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return str(as_scalar(x))

"""Brute-force references that share no code with the package geometry."""
from __future__ import annotations

import itertools
from fractions import Fraction


def solve_square(A, b):
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def feasible(hrep, x) -> bool:
    return all(sum(Fraction(a_i) * x_i for a_i, x_i in zip(a, x)) <= b for a, b in hrep)


def brute_vertices(hrep, dim) -> set:
    """Vertices of ``{x : a.x <= b}`` by solving every square subsystem."""
    out = set()
    for rows in itertools.combinations(hrep, dim):
        x = solve_square([a for a, _ in rows], [b for _, b in rows])
        if x is not None and feasible(hrep, x):
            out.add(x)
    return out


def brute_lp_max(c, hrep, dim):
    """Max of ``c.x`` over a bounded nonempty polytope, from its vertices."""
    vs = brute_vertices(hrep, dim)
    return max(sum(Fraction(ci) * vi for ci, vi in zip(c, v)) for v in vs) if vs else None


def sphere_grid(dim: int, steps: int):
    """Integer points of the ``inf``-sphere of radius ``steps`` (grid step 1/steps after scaling)."""
    rng = range(-steps, steps + 1)
    for z in itertools.product(rng, repeat=dim):
        if max(abs(t) for t in z) == steps:
            yield z


def int_member(rows, z) -> bool:
    """``z`` satisfies every homogeneous row ``a.z <= 0``; rows and z are integer-valued."""
    return all(sum(a_i * z_i for a_i, z_i in zip(a, z)) <= 0 for a in rows)


def integer_rows(P):
    """Homogeneous rows of a cone's H-description scaled to integers."""
    from math import lcm

    out = []
    for a, b in P.hrep:
        assert b == 0
        d = lcm(*(Fraction(t).denominator for t in a))
        out.append(tuple(int(t * d) for t in a))
    return out

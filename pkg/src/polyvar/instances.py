"""Seeded random maps and prefans for property tests and experiment scripts."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .polykernel import Polyhedron
from .svmaps import DEFAULT_NORMS, NormPair, Prefan, PrefanCell, PwpMap


def random_row(rng: random.Random, dim: int, lo: int = -2, hi: int = 2) -> tuple:
    while True:
        r = tuple(Fraction(rng.randint(lo, hi)) for _ in range(dim))
        if any(r):
            return r


def random_cone(rng: random.Random, dim: int, rows: int) -> Polyhedron:
    return Polyhedron.cone(dim, [random_row(rng, dim) for _ in range(rows)]).minimal()


def random_polyhedron(rng: random.Random, dim: int, rows: int, bounded: bool = False) -> Polyhedron:
    hrep = [(random_row(rng, dim), Fraction(rng.randint(0, 3))) for _ in range(rows)]
    if bounded:
        for i in range(dim):
            e = tuple(Fraction(int(j == i)) for j in range(dim))
            hrep.append((e, Fraction(3)))
            hrep.append((tuple(-x for x in e), Fraction(3)))
    return Polyhedron(dim, hrep=hrep)


def random_pwp_map(rng: random.Random, n: int, m: int, pieces: Optional[int] = None,
                   affine_rows: bool = True) -> PwpMap:
    """Union of 1-3 cones through the origin, some cut by inactive rows ``a.z <= 1``."""
    d = n + m
    k = pieces or rng.randint(1, 3)
    ps = []
    for _ in range(k):
        rows = [(random_row(rng, d), Fraction(0)) for _ in range(rng.randint(1, d))]
        if affine_rows and rng.random() < 0.3:
            rows.append((random_row(rng, d), Fraction(1)))
        ps.append(Polyhedron(d, hrep=rows).minimal())
    return PwpMap(n, m, ps)


def shifted_ball_prefan(n: int, m: int, M, kappa, norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = M p + kappa ||p|| B``."""
    kappa = Fraction(kappa)
    ball = norms.codomain.ball_rows(m)
    cells = []
    for L, c in norms.domain.linear_pieces(n):
        rows = [(tuple(a) + (Fraction(0),) * m, b) for a, b in L.hrep]
        for g in ball:
            # g.(y - M p) <= kappa c.p
            gM = tuple(sum((g[i] * M[i][j] for i in range(m)), Fraction(0)) for j in range(n))
            rows.append((tuple(-x - kappa * y for x, y in zip(gM, c)) + tuple(g), Fraction(0)))
        cells.append(PrefanCell(L.minimal(), Polyhedron(n + m, hrep=rows).minimal()))
    return Prefan(n, m, cells, norms)


def random_prefan(rng: random.Random, n: int, m: int, norms: NormPair = DEFAULT_NORMS) -> Prefan:
    M = [[Fraction(rng.randint(-2, 2), rng.choice((1, 2))) for _ in range(n)] for _ in range(m)]
    kappa = Fraction(rng.choice((0, 1, 2, 3, 4)), 2)
    return shifted_ball_prefan(n, m, M, kappa, norms)


def random_interval_prefan(rng: random.Random) -> Prefan:
    """``H(p) = [a p, b p]`` for ``p >= 0`` and ``[c |p|, d |p|]`` style for ``p <= 0``."""
    def interval(sign):
        lo, hi = sorted(Fraction(rng.randint(-4, 4), 2) for _ in range(2))
        # y between lo*|p| and hi*|p| where |p| = sign*p
        rows = [
            (Fraction(-sign), Fraction(0)),
            (Fraction(lo * sign), Fraction(-1)),
            (Fraction(-hi * sign), Fraction(1)),
        ]
        return Polyhedron.cone(2, rows).minimal()

    pos = Polyhedron.cone(1, [(-1,)])
    neg = Polyhedron.cone(1, [(1,)])
    return Prefan(1, 1, [PrefanCell(pos, interval(1)), PrefanCell(neg, interval(-1))])

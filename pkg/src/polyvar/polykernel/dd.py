"""Double description for cones ``{x : A x <= 0}`` over the integers.

Rows and generators are kept as primitive integer vectors, which is exact
because every operation here is invariant under positive scaling.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence

from .rational import primitive_int


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _canon_line(v) -> tuple:
    v = _prim(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def cone_generators(rows: Sequence[Sequence], dim: int) -> tuple[tuple, tuple]:
    """Extreme rays and a lineality basis of ``{x : row . x <= 0}``.

    ``rows`` may hold Fractions; they are rescaled to integers first.
    Returns ``(rays, lines)`` as tuples of primitive integer tuples.
    """
    irows = tuple(primitive_int(r) for r in rows if any(x != 0 for x in r))
    return _cone_generators(irows, dim)


@lru_cache(maxsize=20000)
def _cone_generators(rows: tuple, dim: int) -> tuple[tuple, tuple]:
    rows = tuple(dict.fromkeys(rows))
    lines = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple] = []
    zsets: list[int] = []  # bitmask of processed rows vanishing at each ray
    for k, a in enumerate(rows):
        bit = 1 << k
        piv = None
        for idx, l in enumerate(lines):
            if _idot(a, l) != 0:
                piv = idx
                break
        if piv is not None:
            l = lines.pop(piv)
            al = _idot(a, l)
            if al < 0:
                l = tuple(-x for x in l)
                al = -al
            new_lines = []
            for l2 in lines:
                a2 = _idot(a, l2)
                if a2:
                    l2 = _canon_line(tuple(al * x - a2 * y for x, y in zip(l2, l)))
                new_lines.append(l2)
            lines = new_lines
            new_rays = []
            for r in rays:
                ar = _idot(a, r)
                if ar:
                    r = _prim(tuple(al * x - ar * y for x, y in zip(r, l)))
                new_rays.append(r)
            rays = new_rays
            zsets = [z | bit for z in zsets]
            # -l satisfies the new row strictly and all earlier rows with equality
            rays.append(_prim(tuple(-x for x in l)))
            zsets.append((1 << k) - 1)
            continue

        vals = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not pos:
            zsets = [z | bit if vals[i] == 0 else z for i, z in enumerate(zsets)]
            continue
        keep = [i for i, v in enumerate(vals) if v <= 0]
        out_rays = [rays[i] for i in keep]
        out_z = [zsets[i] | bit if vals[i] == 0 else zsets[i] for i in keep]
        need = dim - len(lines) - 2
        for i in pos:
            for j in neg:
                common = zsets[i] & zsets[j]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for t in range(len(rays)):
                    if t != i and t != j and (zsets[t] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                r = _prim(tuple(vi * y - vj * x for x, y in zip(rays[i], rays[j])))
                out_rays.append(r)
                out_z.append(common | bit)
        rays, zsets = out_rays, out_z
    lines = [_canon_line(l) for l in lines]
    return tuple(sorted(set(rays))), tuple(sorted(set(lines)))

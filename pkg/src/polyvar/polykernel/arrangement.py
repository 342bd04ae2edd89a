"""Hyperplane arrangements: cell refinement, local faces and cone coverage."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import DimensionMismatch, PointNotInSet
from .dd import cone_generators
from .polyhedron import Polyhedron, intersect, project
from .rational import canonical_line, dot, primitive_int, to_fractions, vec
from .union import PolyUnion, as_union, uncovered_point


def split_cells(region: Polyhedron, hyperplanes: Sequence[tuple]) -> list[Polyhedron]:
    """Cells of ``region`` cut by hyperplanes ``(a, b)``; only cells of full
    relative dimension are kept, so their union is ``region`` again."""
    cells = [region]
    d = region.affine_dim
    for a, b in hyperplanes:
        nxt = []
        for C in cells:
            lo = C.support(tuple(-x for x in a))
            hi = C.support(a)
            if hi <= b or -lo >= b:
                nxt.append(C)
                continue
            for row in ((a, b), (tuple(-x for x in a), -b)):
                half = intersect(C, Polyhedron(C.dim, hrep=[row]))
                if not half.is_empty() and half.affine_dim == d:
                    nxt.append(half)
        cells = nxt
    return cells


# ---------------------------------------------------------------------------
# local faces of a union


@dataclass(frozen=True)
class Face:
    """A relatively open face of the local arrangement at a base point.

    ``sample_point`` lies in the face; every point of the face near the
    base point has the same tangent cone to the union.
    """

    parent: Polyhedron
    active_set: frozenset
    sample_point: tuple
    direction: tuple = ()
    pieces: tuple = ()
    signs: tuple = field(default=(), compare=False)


def _sign_faces(normals: list[tuple], dim: int,
                forbidden: Optional[list[dict]] = None) -> list[tuple[tuple, tuple]]:
    """All nonempty sign patterns of the central arrangement of ``normals``.

    Returns ``(signs, point)`` pairs; each point realises its sign vector.
    With ``forbidden`` (one ``{index: signs}`` map per region), only patterns
    avoiding the forbidden signs of at least one region are kept.
    A pattern is realisable iff the closed cone it defines has, for every
    strict sign, a ray leaving that hyperplane; the sum of the rays is then
    a realising point.
    """
    out = []
    memo: dict = {}
    inormals = [primitive_int(a) for a in normals]

    def realise(prefix):
        key = tuple(prefix)
        if key not in memo:
            memo[key] = _realise(prefix)
        return memo[key]

    def _realise(prefix):
        rows = []
        for a, sgn in zip(inormals, prefix):
            if sgn == 0:
                rows.append(a)
                rows.append(tuple(-x for x in a))
            else:
                rows.append(tuple(-sgn * x for x in a))
        rays, _ = cone_generators(rows, dim)
        pt = [0] * dim
        for r in rays:
            pt = [p + x for p, x in zip(pt, r)]
        for a, sgn in zip(inormals, prefix):
            if sgn != 0 and sgn * sum(x * y for x, y in zip(a, pt)) <= 0:
                return None
        return to_fractions(pt)

    def rec(prefix):
        if len(prefix) == len(normals):
            out.append((tuple(prefix), realise(prefix)))
            return
        for s in (-1, 0, 1):
            nxt = prefix + [s]
            if forbidden is not None and not any(
                all(t not in f.get(j, ()) for j, t in enumerate(nxt)) for f in forbidden
            ):
                continue
            if realise(nxt) is not None:
                rec(prefix + [s])

    rec([])
    return out


def incident_faces(U, x) -> list[Face]:
    """Faces whose closure contains ``x``, one sample point each.

    The tangent cone to ``U`` near ``x`` depends only on the sign vector of
    the displacement against the active constraint normals at ``x``, so the
    faces of that central arrangement that meet ``U`` give every tangent
    cone attained near ``x`` (including ``x`` itself).
    """
    U = as_union(U)
    x = vec(x)
    if len(x) != U.dim:
        raise DimensionMismatch("point dimension")
    holding = U.containing(x)
    if not holding:
        raise PointNotInSet(f"point {tuple(str(v) for v in x)} is not in the set")
    normals = {}
    for i in holding:
        for a, b in U.pieces[i].hrep:
            if dot(a, x) == b and any(v != 0 for v in a):
                normals.setdefault(to_fractions(canonical_line(a)), None)
    normals = list(normals)
    index = {c: j for j, c in enumerate(normals)}
    forbidden = []
    for i in holding:
        f: dict = {}
        for a, b in U.pieces[i].hrep:
            if dot(a, x) == b and any(v != 0 for v in a):
                c = to_fractions(canonical_line(a))
                # a = s k c with k > 0, and a.d <= 0 rules out sign(c.d) = s
                s = 1 if dot(a, c) > 0 else -1
                f.setdefault(index[c], set()).add(s)
        forbidden.append(f)
    faces = []
    for signs, d in _sign_faces(normals, U.dim, forbidden):
        in_union = [
            i for i in holding
            if all(dot(a, d) <= 0 for a, b in U.pieces[i].hrep if dot(a, x) == b)
        ]
        if not in_union:
            continue
        z = _step_point(U, x, d, holding)
        parent = U.pieces[in_union[0]]
        faces.append(Face(parent, parent.active_set(z), z, tuple(d), tuple(in_union), signs))
    return faces


def _step_point(U: PolyUnion, x, d, holding) -> tuple:
    """``x + t d`` with ``t`` small enough to keep the local picture."""
    if all(v == 0 for v in d):
        return x
    bound = Fraction(1)
    for i, P in enumerate(U.pieces):
        if i in holding:
            for a, b in P.hrep:
                ad = dot(a, d)
                slack = b - dot(a, x)
                if slack > 0 and ad > 0:
                    bound = min(bound, slack / ad)
        else:
            if P.is_empty():
                continue
            best = None
            for a, b in P.hrep:
                excess = dot(a, x) - b
                if excess > 0:
                    ad = dot(a, d)
                    lim = excess / -ad if ad < 0 else None
                    if lim is None:
                        best = None
                        break
                    best = lim if best is None else max(best, lim)
            if best is not None:
                bound = min(bound, best)
    t = bound / 2
    return tuple(xi + t * di for xi, di in zip(x, d))


# ---------------------------------------------------------------------------
# coverage


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.covered


def coverage(cones: Sequence[Polyhedron], target: Optional[Polyhedron] = None,
             n: Optional[int] = None) -> CoverageResult:
    """Do the projections of ``cones`` onto the first ``n`` coordinates cover
    ``target`` (default: all of ``R^n``)?

    On failure the witness is a nonzero direction in ``target`` outside
    every projection.
    """
    if n is None:
        if target is None:
            raise ValueError("need n or a target cone")
        n = target.dim
    if target is None:
        target = Polyhedron.space(n)
    if target.dim != n:
        raise DimensionMismatch("target dimension")
    shadows = []
    for C in cones:
        if C.dim < n:
            raise DimensionMismatch("cone dimension smaller than target")
        if C.is_empty():
            continue
        shadows.append(project(C, range(n)) if C.dim > n else C)
    w = uncovered_point(target, PolyUnion(n, shadows))
    if w is None:
        return CoverageResult(True)
    if all(v == 0 for v in w):
        # target is {0} or the region is conic: move along a generator
        gens = target.nonzero_generators()
        for g in gens:
            if not any(S.contains(g) for S in shadows):
                return CoverageResult(False, g)
    return CoverageResult(False, w)

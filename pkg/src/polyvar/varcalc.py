"""Tangent cones, derivatives, limit cones, normal cones and coderivatives."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, NonPolyhedralResult, PointNotOnGraph
from .polykernel import (
    PolyUnion,
    Polyhedron,
    conic_hull,
    convex_hull,
    fiber as poly_fiber,
    incident_faces,
    intersect,
    linear_image,
    polar,
    set_equal,
)
from .polykernel.rational import dot, vec
from .polykernel.union import as_union, dedupe_sets
from .svmaps import PHMap, PwpMap


def _point(S: PwpMap, x, y) -> tuple:
    x, y = vec(x), vec(y)
    if len(x) != S.n or len(y) != S.m:
        raise DimensionMismatch("base point dimensions")
    z = x + y
    if not S.graph.contains(z):
        raise PointNotOnGraph(
            f"({', '.join(map(str, x))} | {', '.join(map(str, y))}) is not on the graph"
        )
    return z


def tangent_cone(U, x) -> PolyUnion:
    """Union over pieces containing ``x`` of their active-constraint cones."""
    U = as_union(U)
    x = vec(x)
    if len(x) != U.dim:
        raise DimensionMismatch("point dimension")
    signature = tuple(
        (i, tuple(k for k, (a, b) in enumerate(P.hrep) if dot(a, x) == b))
        for i, P in enumerate(U.pieces) if P.contains(x)
    )
    if not signature:
        raise PointNotOnGraph("point is not in the set")
    # the cone depends only on which rows are active, so reuse it per union
    cache = U.__dict__.setdefault("_tangent_cache", {})
    if signature not in cache:
        pieces = []
        for i, active in signature:
            rows = [U.pieces[i].hrep[k][0] for k in active]
            pieces.append(Polyhedron.cone(U.dim, rows).minimal())
        cache[signature] = PolyUnion(U.dim, pieces).simplify()
    return cache[signature]


def graphical_derivative(S: PwpMap, x, y) -> PHMap:
    """``DS(x|y)``: the map whose graph is the tangent cone to ``gph S``."""
    return PHMap(S.n, S.m, tangent_cone(S.graph, _point(S, x, y)))


def convexified_derivative(S: PwpMap, x, y) -> PHMap:
    """``D**S(x|y)``: graph is the closed convex hull of the tangent cone."""
    T = tangent_cone(S.graph, _point(S, x, y))
    return PHMap(S.n, S.m, [conic_hull(T.dim, T.pieces)])


@dataclass(frozen=True)
class LimitConeSet:
    """Distinct limits of tangent cones at points of the graph near a base point."""

    base_point: tuple
    cones: tuple  # of PHMap
    convexified: bool
    sample_points: tuple = ()

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __getitem__(self, i):
        return self.cones[i]

    def index_of(self, G: PwpMap) -> Optional[int]:
        for i, C in enumerate(self.cones):
            if set_equal(C.graph, G.graph):
                return i
        return None


def limit_cones(S: PwpMap, x, y, convexified: bool = False) -> LimitConeSet:
    """Every tangent cone (or its convex hull) attained near ``(x, y)``.

    Near the base point the tangent cone is constant on each face of the
    local arrangement, so one sample per face enumerates them all; the
    face through the base point itself is included.
    """
    z = _point(S, x, y)
    cache = S.__dict__.setdefault("_limit_cone_cache", {})
    if (z, convexified) not in cache:
        cache[(z, convexified)] = _limit_cones(S, z, convexified)
    return cache[(z, convexified)]


def _limit_cones(S: PwpMap, z: tuple, convexified: bool) -> LimitConeSet:
    found, samples = [], []
    for f in incident_faces(S.graph, z):
        T = tangent_cone(S.graph, f.sample_point)
        if convexified:
            T = PolyUnion(T.dim, [conic_hull(T.dim, T.pieces)])
        found.append(T)
        samples.append(f.sample_point)
    keep = dedupe_sets(found)
    return LimitConeSet(
        z,
        tuple(PHMap(S.n, S.m, found[i]) for i in keep),
        convexified,
        tuple(samples[i] for i in keep),
    )


# ---------------------------------------------------------------------------
# normals


def regular_normal_cone(S: PwpMap, x, y) -> Polyhedron:
    """Polar of the tangent cone: the intersection of the piece polars."""
    T = tangent_cone(S.graph, _point(S, x, y))
    return intersect(*[polar(P) for P in T.pieces]).minimal()


def limiting_normal_cone(S: PwpMap, x, y) -> PolyUnion:
    """Union of the polars of the convexified limit cones."""
    L = limit_cones(S, x, y, convexified=True)
    pols = [polar(G.graph.pieces[0]) for G in L]
    return PolyUnion(S.n + S.m, pols).simplify()


def is_graphically_regular(S: PwpMap, x, y) -> bool:
    """Clarke regularity of the graph: regular and limiting normals coincide."""
    return set_equal(regular_normal_cone(S, x, y), limiting_normal_cone(S, x, y))


def _to_coderivative(P: Polyhedron, n: int, m: int) -> Polyhedron:
    # normal (a, b), a in R^n, b in R^m, becomes (u, v) = (-b, a)
    M = []
    for i in range(m):
        M.append([Fraction(-1) if j == n + i else Fraction(0) for j in range(n + m)])
    for i in range(n):
        M.append([Fraction(1) if j == i else Fraction(0) for j in range(n + m)])
    return linear_image(P, M, n + m).minimal()


def coderivative(S: PwpMap, x, y) -> PHMap:
    """``D*S(x|y): R^m => R^n`` with ``v in D*S(u)`` iff ``(v, -u)`` is a limiting normal."""
    N = limiting_normal_cone(S, x, y)
    return PHMap(S.m, S.n, [_to_coderivative(P, S.n, S.m) for P in N])


def regular_coderivative(S: PwpMap, x, y) -> PHMap:
    N = regular_normal_cone(S, x, y)
    return PHMap(S.m, S.n, [_to_coderivative(N, S.n, S.m)])


def convexified_coderivative_fiber(S: PwpMap, x, y, u) -> Polyhedron:
    """``cl co D*S(x|y)(u)`` for any codomain dimension."""
    D = coderivative(S, x, y)
    u = vec(u)
    return convex_hull(S.n, [poly_fiber(P, u, S.m) for P in D.graph])


def convexified_coderivative(S: PwpMap, x, y) -> PHMap:
    """Graph of ``u -> cl co D*S(x|y)(u)``.

    For a one-dimensional codomain the sign of ``u`` splits the domain into
    three cones and the hull over each is again a polyhedral cone.  In
    higher dimensions the fiberwise hull can have a curved graph, so only
    ``convexified_coderivative_fiber`` is offered there.
    """
    if S.m != 1:
        raise NonPolyhedralResult(
            "fiberwise convex hull of the coderivative is not polyhedral in general "
            "when the codomain has dimension > 1; use convexified_coderivative_fiber"
        )
    D = coderivative(S, x, y)
    n = S.n
    pieces = []
    for s in (1, -1):
        F = convex_hull(n, [poly_fiber(P, (s,), 1) for P in D.graph])
        if F.is_empty():
            continue
        lifted = Polyhedron(1 + n, vertices=[(Fraction(0),) * (1 + n)],
                            rays=[(Fraction(s),) + v for v in F.vertices]
                            + [(Fraction(0),) + r for r in F.rays],
                            lines=[(Fraction(0),) + l for l in F.lines])
        pieces.append(lifted.minimal())
    F0 = convex_hull(n, [poly_fiber(P, (0,), 1) for P in D.graph])
    if not F0.is_empty():
        pieces.append(Polyhedron(1 + n, vertices=[(Fraction(0),) * (1 + n)],
                                 rays=[(Fraction(0),) + r for r in F0.rays]
                                 + [(Fraction(0),) + v for v in F0.vertices],
                                 lines=[(Fraction(0),) + l for l in F0.lines]).minimal())
    return PHMap(1, n, pieces)


def _min_linear(P: Polyhedron, c) -> Fraction | float:
    """``min c . z`` over ``P`` (``inf`` if empty, ``-inf`` if unbounded)."""
    if P.is_empty():
        return float("inf")
    s = P.support(tuple(-x for x in c))
    return -s if s != float("inf") else float("-inf")


def coderivative_criterion(S: PwpMap, x, y, H, p, u, convexified: bool = False) -> bool:
    """Pointwise test ``min_{y in H(p)} <u, y> <= min_{v in D*S(u)} <v, p>``.

    With ``convexified`` the right side ranges over ``cl co D*S(u)``; both
    minima of a linear function agree, which the tests exercise.
    """
    p, u = vec(p), vec(u)
    lhs = _min_linear(H.fiber(p), u)
    if convexified:
        rhs = _min_linear(convexified_coderivative_fiber(S, x, y, u), p)
    else:
        D = coderivative(S, x, y)
        rhs = min((_min_linear(poly_fiber(P, u, S.m), p) for P in D.graph), default=float("inf"))
    return lhs <= rhs

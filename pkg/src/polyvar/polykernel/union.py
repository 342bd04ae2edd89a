"""Finite unions of polyhedra and exact set relations between them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from ..errors import DimensionMismatch
from .polyhedron import Polyhedron, intersect, permute
from .rational import dot, vec


class PolyUnion:
    """A closed set given as a finite union of polyhedra (possibly none)."""

    def __init__(self, dim: int, pieces: Iterable[Polyhedron] = ()):
        self.dim = dim
        ps = []
        for p in pieces:
            if p.dim != dim:
                raise DimensionMismatch(f"piece of dimension {p.dim} in union of dimension {dim}")
            ps.append(p)
        self.pieces = tuple(ps)

    @classmethod
    def of(cls, *pieces: Polyhedron) -> "PolyUnion":
        if not pieces:
            raise ValueError("use PolyUnion(dim) for the empty union")
        return cls(pieces[0].dim, pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def __repr__(self):
        return f"PolyUnion(dim={self.dim}, pieces={len(self.pieces)})"

    def nonempty_pieces(self) -> "PolyUnion":
        return PolyUnion(self.dim, [p for p in self.pieces if not p.is_empty()])

    def is_empty(self) -> bool:
        return all(p.is_empty() for p in self.pieces)

    def contains(self, x) -> bool:
        return any(p.contains(x) for p in self.pieces)

    __contains__ = contains

    def containing(self, x) -> list[int]:
        return [i for i, p in enumerate(self.pieces) if p.contains(x)]

    def simplify(self) -> "PolyUnion":
        """Drop empty pieces and pieces contained in another piece."""
        ps = [p.minimal() for p in self.pieces if not p.is_empty()]
        keep: list[Polyhedron] = []
        for i, p in enumerate(ps):
            dominated = False
            for j, q in enumerate(ps):
                if i == j:
                    continue
                if p.issubset(q) and (not q.issubset(p) or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(p)
        return PolyUnion(self.dim, keep)

    def map_pieces(self, f) -> "PolyUnion":
        out = [f(p) for p in self.pieces]
        return PolyUnion(out[0].dim if out else self.dim, out)

    def permute(self, perm: Sequence[int]) -> "PolyUnion":
        return PolyUnion(self.dim, [permute(p, perm) for p in self.pieces])

    def is_cone(self) -> bool:
        return all(p.is_cone for p in self.pieces if not p.is_empty())


SetLike = Union[Polyhedron, PolyUnion]


def as_union(A: SetLike) -> PolyUnion:
    if isinstance(A, PolyUnion):
        return A
    return PolyUnion(A.dim, [A])


# ---------------------------------------------------------------------------
# covering


def _region_outside(P: Polyhedron, Qs: list[Polyhedron]) -> Optional[Polyhedron]:
    """A polyhedron ``R`` in ``P`` with ``dim R = dim P`` meeting every ``Q``
    in a set of lower dimension, or ``None`` when ``P`` lies in ``union Qs``.

    Pieces meeting ``P`` in lower dimension cannot matter: the remaining
    pieces cover a dense part of ``P`` and their union is closed.
    """
    if P.is_empty():
        return None
    d = P.affine_dim
    live = []
    for Q in Qs:
        PQ = intersect(P, Q)
        if not PQ.is_empty() and PQ.affine_dim == d:
            live.append(Q)
    if not live:
        return P
    Q = live[0]
    if P.issubset(Q):
        return None
    cut = None
    for a, b in Q.hrep:
        if P.support(a) > b:
            cut = (a, b)
            break
    a, b = cut
    outer = intersect(P, Polyhedron(P.dim, hrep=[(tuple(-x for x in a), -b)]))
    R = _region_outside(outer, [q for q in live if q is not Q])
    if R is not None:
        return R
    inner = intersect(P, Polyhedron(P.dim, hrep=[(a, b)]))
    if inner.is_empty() or inner.affine_dim < d:
        return None
    return _region_outside(inner, live)


def _spread_points(R: Polyhedron) -> list[tuple]:
    """Points of ``R`` whose affine hull is ``aff R``."""
    verts, rays, lines = R.vrep
    v0 = verts[0]
    pts = list(verts)
    for r in rays:
        pts.append(tuple(x + y for x, y in zip(v0, r)))
    for l in lines:
        pts.append(tuple(x + y for x, y in zip(v0, l)))
        pts.append(tuple(x - y for x, y in zip(v0, l)))
    return pts


def point_avoiding(R: Polyhedron, Qs: Sequence[Polyhedron]) -> tuple:
    """A relative-interior point of ``R`` outside every ``Q``.

    Requires each ``R & Q`` to have lower dimension than ``R``.  Points are
    taken on a moment curve through the generators, which meets any proper
    affine subspace of ``aff R`` only finitely often.
    """
    pts = _spread_points(R)
    k = 2
    while True:
        t = Fraction(1, k)
        w = [t ** i for i in range(len(pts))]
        s = sum(w)
        x = tuple(sum(wi * p[j] for wi, p in zip(w, pts)) / s for j in range(R.dim))
        if not any(Q.contains(x) for Q in Qs):
            return x
        k += 1


def uncovered_point(A: SetLike, B: SetLike) -> Optional[tuple]:
    """A point of ``A`` outside ``B``, or ``None`` when ``A`` is a subset of ``B``."""
    A, B = as_union(A), as_union(B)
    if A.dim != B.dim:
        raise DimensionMismatch("relate needs equal ambient dimensions")
    Qs = [q for q in B.pieces if not q.is_empty()]
    for P in A.pieces:
        R = _region_outside(P, Qs)
        if R is not None:
            return point_avoiding(R, Qs)
    return None


def is_subset(A: SetLike, B: SetLike) -> bool:
    return uncovered_point(A, B) is None


def set_equal(A: SetLike, B: SetLike) -> bool:
    return is_subset(A, B) and is_subset(B, A)


@dataclass(frozen=True)
class Relation:
    kind: str  # disjoint | subset | superset | equal | overlap
    a_not_b: Optional[tuple] = None  # witness in A \ B
    b_not_a: Optional[tuple] = None  # witness in B \ A

    def __str__(self):
        return self.kind


def relate(A: SetLike, B: SetLike) -> Relation:
    """Classify ``A`` against ``B`` exactly, with witnesses of non-inclusion.

    ``subset`` means A is contained in B, ``superset`` the reverse.
    Empty sets count as subsets; two empty sets are ``equal``.
    """
    A, B = as_union(A), as_union(B)
    wa = uncovered_point(A, B)
    wb = uncovered_point(B, A)
    if wa is None and wb is None:
        return Relation("equal")
    if wa is None:
        return Relation("subset", None, wb)
    if wb is None:
        return Relation("superset", wa, None)
    meets = any(
        not intersect(p, q).is_empty() for p in A.pieces for q in B.pieces
    )
    return Relation("overlap" if meets else "disjoint", wa, wb)


def union_key(U: PolyUnion) -> tuple:
    """Order-independent key of the simplified piece list (not a set invariant)."""
    return (U.dim, tuple(sorted(p.key()[1] for p in U.simplify().pieces)))


def dedupe_sets(items: Sequence[PolyUnion]) -> list[int]:
    """Indices of the first occurrence of each distinct set (exact equality).

    Identical piece lists are matched by key; otherwise two sets are only
    compared exactly when they agree on membership of a common probe list.
    """
    keys = [tuple(sorted(p.key()[1] for p in U.pieces)) for U in items]
    probes = []
    for U in items:
        for P in U.pieces:
            if not P.is_empty():
                probes.append(P.relint_point())
                probes.extend(P.vertices)
                probes.extend(P.rays)
    probes = list(dict.fromkeys(probes))
    prints = {}
    reps: list[int] = []
    seen_keys: dict = {}
    for i, U in enumerate(items):
        if keys[i] in seen_keys:
            continue
        fp = tuple(U.contains(z) for z in probes)
        match = any(set_equal(U, items[j]) for j in prints.get(fp, ()))
        seen_keys[keys[i]] = i
        if not match:
            reps.append(i)
            prints.setdefault(fp, []).append(i)
    return reps

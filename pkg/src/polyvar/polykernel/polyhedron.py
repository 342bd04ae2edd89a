"""Exact convex polyhedra with lazily converted H/V representations."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from ..errors import DimensionMismatch, InconsistentRepresentations, NotACone
from . import lp
from .dd import cone_generators
from .rational import (
    as_scalar,
    canonical_line,
    dot,
    is_zero,
    primitive_int,
    rank,
    to_fractions,
    vec,
)

Halfspace = tuple  # (a: tuple[Fraction], b: Fraction) meaning a . x <= b


def _norm_row(a, b) -> Halfspace:
    """Scale an inequality so its coefficients are primitive integers."""
    full = primitive_int(tuple(a) + (b,))
    if all(x == 0 for x in full[:-1]):
        # 0 <= b: keep only the sign of b
        return (tuple(Fraction(0) for _ in a), Fraction((b > 0) - (b < 0)))
    return (to_fractions(full[:-1]), Fraction(full[-1]))


class Polyhedron:
    """A convex polyhedron ``{x : a_i . x <= b_i}`` in ``R^dim``.

    Either representation may be supplied; the other is computed on demand
    by double description.  Instances are treated as immutable values.
    """

    def __init__(
        self,
        dim: int,
        hrep: Optional[Iterable[Halfspace]] = None,
        vertices: Optional[Iterable] = None,
        rays: Iterable = (),
        lines: Iterable = (),
    ):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self._hrep = None
        self._vrep = None
        self._vrep_extreme = False  # True once the generators come from double description
        if hrep is not None:
            rows = []
            for a, b in hrep:
                a = vec(a)
                if len(a) != dim:
                    raise DimensionMismatch(f"inequality of length {len(a)} in dimension {dim}")
                rows.append(_norm_row(a, as_scalar(b)))
            self._hrep = tuple(dict.fromkeys(rows))
        if vertices is not None:
            vs = [vec(v) for v in vertices]
            rs = [vec(r) for r in rays]
            ls = [vec(l) for l in lines]
            for g in vs + rs + ls:
                if len(g) != dim:
                    raise DimensionMismatch(f"generator of length {len(g)} in dimension {dim}")
            self._vrep = (
                tuple(dict.fromkeys(vs)),
                tuple(dict.fromkeys(to_fractions(primitive_int(r)) for r in rs if not is_zero(r))),
                tuple(dict.fromkeys(to_fractions(canonical_line(l)) for l in ls if not is_zero(l))),
            )
        if self._hrep is None and self._vrep is None:
            raise ValueError("need an H- or a V-representation")

    # ---- constructors -------------------------------------------------
    @classmethod
    def from_hrep(cls, dim, inequalities=(), equalities=()):
        rows = [(vec(a), as_scalar(b)) for a, b in inequalities]
        for a, b in equalities:
            a, b = vec(a), as_scalar(b)
            rows.append((a, b))
            rows.append((tuple(-x for x in a), -b))
        return cls(dim, hrep=rows)

    @classmethod
    def from_vrep(cls, dim, vertices=(), rays=(), lines=()):
        return cls(dim, vertices=list(vertices), rays=rays, lines=lines)

    @classmethod
    def cone(cls, dim, rows=(), eq_rows=()):
        """Polyhedral cone ``{x : r . x <= 0}`` (plus equalities)."""
        return cls.from_hrep(dim, [(r, 0) for r in rows], [(r, 0) for r in eq_rows])

    @classmethod
    def space(cls, dim):
        return cls(dim, hrep=[])

    @classmethod
    def empty(cls, dim):
        return cls(dim, hrep=[((Fraction(0),) * dim, Fraction(-1))])

    @classmethod
    def point(cls, x):
        x = vec(x)
        return cls(len(x), vertices=[x])

    @classmethod
    def origin(cls, dim):
        return cls(dim, vertices=[(Fraction(0),) * dim])

    # ---- representations --------------------------------------------
    @property
    def has_hrep(self) -> bool:
        return self._hrep is not None

    @property
    def has_vrep(self) -> bool:
        return self._vrep is not None

    @property
    def hrep(self) -> tuple:
        if self._hrep is None:
            self._hrep = self._minimal_hrep
        return self._hrep

    @property
    def vrep(self) -> tuple:
        if self._vrep is None:
            self._vrep = self._vrep_from_h()
            self._vrep_extreme = True
        return self._vrep

    @property
    def vertices(self) -> tuple:
        return self.vrep[0]

    @property
    def rays(self) -> tuple:
        return self.vrep[1]

    @property
    def lines(self) -> tuple:
        return self.vrep[2]

    def _vrep_from_h(self):
        d = self.dim
        rows = [tuple(a) + (-b,) for a, b in self._hrep]
        rows.append((Fraction(0),) * d + (Fraction(-1),))
        rays, lines = cone_generators(rows, d + 1)
        verts, rs = [], []
        for r in rays:
            t = r[-1]
            if t > 0:
                verts.append(tuple(Fraction(x, t) for x in r[:-1]))
            else:
                rs.append(to_fractions(r[:-1]))
        if not verts:
            return ((), (), ())
        ls = [to_fractions(l[:-1]) for l in lines]
        return (tuple(verts), tuple(rs), tuple(ls))

    @cached_property
    def _minimal_hrep(self) -> tuple:
        verts, rays, lines = self.vrep
        d = self.dim
        if not verts:
            return (_norm_row((Fraction(0),) * d, Fraction(-1)),)
        rows = [tuple(v) + (Fraction(1),) for v in verts]
        rows += [tuple(r) + (Fraction(0),) for r in rays]
        for l in lines:
            rows.append(tuple(l) + (Fraction(0),))
            rows.append(tuple(-x for x in l) + (Fraction(0),))
        prays, plines = cone_generators(rows, d + 1)
        out = []
        for r in prays:
            if all(x == 0 for x in r[:-1]):
                continue
            out.append(_norm_row(to_fractions(r[:-1]), Fraction(-r[-1])))
        for l in plines:
            a, b = to_fractions(l[:-1]), Fraction(-l[-1])
            out.append(_norm_row(a, b))
            out.append(_norm_row(tuple(-x for x in a), -b))
        return tuple(sorted(dict.fromkeys(out)))

    def minimal(self) -> "Polyhedron":
        """Same set with irredundant H- and V-representations."""
        P = Polyhedron.__new__(Polyhedron)
        P.dim = self.dim
        P._hrep = self._minimal_hrep
        vrep = self.vrep
        P._vrep = vrep if self._vrep_extreme else P._vrep_from_h()
        P._vrep_extreme = True
        return P

    # ---- predicates ---------------------------------------------------
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise DimensionMismatch("point dimension")
        return all(dot(a, x) <= b for a, b in self.hrep)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_ray(self, r) -> bool:
        return all(dot(a, r) <= 0 for a, _ in self.hrep)

    def issubset(self, other: "Polyhedron") -> bool:
        _check_dims(self, other)
        if self.is_empty():
            return True
        verts, rays, lines = self.vrep
        for a, b in other.hrep:
            if any(dot(a, v) > b for v in verts):
                return False
            if any(dot(a, r) > 0 for r in rays):
                return False
            if any(dot(a, l) != 0 for l in lines):
                return False
        return True

    def equals(self, other: "Polyhedron") -> bool:
        return self.issubset(other) and other.issubset(self)

    @cached_property
    def affine_dim(self) -> int:
        verts, rays, lines = self.vrep
        if not verts:
            return -1
        v0 = verts[0]
        diffs = [tuple(x - y for x, y in zip(v, v0)) for v in verts[1:]]
        return rank(diffs + list(rays) + list(lines))

    @property
    def is_full_dim(self) -> bool:
        return self.affine_dim == self.dim

    @cached_property
    def is_cone(self) -> bool:
        if self.is_empty():
            return False
        return all(b == 0 for _, b in self._minimal_hrep)

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    def relint_point(self) -> tuple:
        """A rational point of the relative interior (barycenter plus rays)."""
        verts, rays, _ = self.vrep
        if not verts:
            raise ValueError("empty polyhedron has no interior point")
        k = len(verts)
        pt = [sum((v[i] for v in verts), Fraction(0)) / k for i in range(self.dim)]
        for r in rays:
            pt = [p + x for p, x in zip(pt, r)]
        return tuple(pt)

    def nonzero_generators(self) -> list[tuple]:
        """Rays, both orientations of lines, and nonzero vertices."""
        verts, rays, lines = self.vrep
        out = [v for v in verts if not is_zero(v)]
        out += list(rays)
        for l in lines:
            out.append(l)
            out.append(tuple(-x for x in l))
        return out

    def active_set(self, x) -> frozenset:
        x = vec(x)
        return frozenset(i for i, (a, b) in enumerate(self.hrep) if dot(a, x) == b)

    def support(self, c) -> Fraction | float:
        """``max c . x`` over the polyhedron (``inf`` when unbounded)."""
        verts, rays, lines = self.vrep
        if not verts:
            return float("-inf")
        if any(dot(c, l) != 0 for l in lines) or any(dot(c, r) > 0 for r in rays):
            return float("inf")
        return max(dot(c, v) for v in verts)

    # ---- misc ---------------------------------------------------------
    def __repr__(self):
        if self._hrep is not None:
            body = " ; ".join(_fmt_row(a, b) for a, b in self._hrep)
            return f"Polyhedron(dim={self.dim}, H[{body}])"
        v, r, l = self._vrep
        return f"Polyhedron(dim={self.dim}, V={len(v)}, R={len(r)}, L={len(l)})"

    def key(self) -> tuple:
        """Hashable canonical key of the minimal H-representation."""
        return (self.dim, self._minimal_hrep)


def _fmt_row(a, b):
    return "[" + ",".join(str(x) for x in a) + f"]<={b}"


def _check_dims(*ps):
    d = ps[0].dim
    for p in ps[1:]:
        if p.dim != d:
            raise DimensionMismatch(f"dimensions {d} and {p.dim} differ")


# ---------------------------------------------------------------------------
# operations


def convert(P: Polyhedron) -> Polyhedron:
    """Return ``P`` with both representations present and cross-checked."""
    if P.has_hrep and P.has_vrep:
        from_h = Polyhedron(P.dim, hrep=P.hrep)
        from_v = Polyhedron(P.dim, vertices=P.vertices, rays=P.rays, lines=P.lines)
        if not (from_h.issubset(from_v) and from_v.issubset(from_h)):
            raise InconsistentRepresentations("H- and V-representations differ")
        return P
    Q = Polyhedron.__new__(Polyhedron)
    Q.dim = P.dim
    Q._hrep = P.hrep
    Q._vrep = P.vrep
    Q._vrep_extreme = P._vrep_extreme
    return Q


def polar(C: Polyhedron) -> Polyhedron:
    """Negative polar cone ``{v : v . x <= 0 for all x in C}``."""
    if not C.is_cone:
        raise NotACone("polar is defined here for convex cones only")
    rows = [(r, 0) for r in C.rays]
    for l in C.lines:
        rows.append((l, 0))
        rows.append((tuple(-x for x in l), 0))
    return Polyhedron(C.dim, hrep=rows).minimal()


def intersect(*ps: Polyhedron) -> Polyhedron:
    _check_dims(*ps)
    rows = []
    for p in ps:
        rows.extend(p.hrep)
    return Polyhedron(ps[0].dim, hrep=rows)


def minkowski(A: Polyhedron, B: Polyhedron) -> Polyhedron:
    _check_dims(A, B)
    if A.is_empty() or B.is_empty():
        return Polyhedron.empty(A.dim)
    verts = [tuple(x + y for x, y in zip(u, v)) for u in A.vertices for v in B.vertices]
    return Polyhedron(
        A.dim, vertices=verts, rays=A.rays + B.rays, lines=A.lines + B.lines
    ).minimal()


def linear_image(P: Polyhedron, M: Sequence[Sequence], out_dim: int) -> Polyhedron:
    """Image ``{M x : x in P}`` with ``M`` given as ``out_dim`` rows."""
    if P.is_empty():
        return Polyhedron.empty(out_dim)
    f = lambda v: tuple(dot(row, v) for row in M)
    return Polyhedron(
        out_dim,
        vertices=[f(v) for v in P.vertices],
        rays=[f(r) for r in P.rays],
        lines=[f(l) for l in P.lines],
    ).minimal()


def preimage(P: Polyhedron, M: Sequence[Sequence], in_dim: int, shift=None) -> Polyhedron:
    """``{x : M x + shift in P}``."""
    rows = []
    for a, b in P.hrep:
        ca = tuple(sum((a[i] * M[i][j] for i in range(len(M))), Fraction(0)) for j in range(in_dim))
        bb = b - (dot(a, shift) if shift is not None else 0)
        rows.append((ca, bb))
    return Polyhedron(in_dim, hrep=rows)


def permute(P: Polyhedron, perm: Sequence[int]) -> Polyhedron:
    """Coordinate permutation: new coordinate ``i`` is old coordinate ``perm[i]``."""
    rows = []
    for a, b in P.hrep:
        rows.append((tuple(a[perm[i]] for i in range(P.dim)), b))
    return Polyhedron(P.dim, hrep=rows)


def product(A: Polyhedron, B: Polyhedron) -> Polyhedron:
    z = (Fraction(0),)
    rows = [(tuple(a) + z * B.dim, b) for a, b in A.hrep]
    rows += [(z * A.dim + tuple(a), b) for a, b in B.hrep]
    return Polyhedron(A.dim + B.dim, hrep=rows)


def _remove_redundant(rows, dim):
    """Irredundant form of ``rows`` via a V-representation round trip."""
    P = Polyhedron(dim, hrep=rows)
    if P.is_empty():
        return [_norm_row((Fraction(0),) * dim, Fraction(-1))], True
    return list(P.minimal().hrep), False


def project(P: Polyhedron, keep: Sequence[int]) -> Polyhedron:
    """Coordinate projection onto ``keep`` by Fourier-Motzkin elimination."""
    keep = list(keep)
    if any(k < 0 or k >= P.dim for k in keep):
        raise DimensionMismatch("projection index out of range")
    elim = [j for j in range(P.dim) if j not in keep]
    rows = list(P.hrep)
    for j in elim:
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        out = [r for r in rows if r[0][j] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[j], -an[j]
                a = tuple(cn * x + cp * y for x, y in zip(ap, an))
                out.append(_norm_row(a, cn * bp + cp * bn))
        rows, empty = _remove_redundant(out, P.dim)
        if empty:
            return Polyhedron.empty(len(keep))
    return Polyhedron(len(keep), hrep=[(tuple(a[k] for k in keep), b) for a, b in rows])


def project_by_generators(P: Polyhedron, keep: Sequence[int]) -> Polyhedron:
    """Projection via the V-representation (independent of ``project``)."""
    M = [[Fraction(1) if j == k else Fraction(0) for j in range(P.dim)] for k in keep]
    return linear_image(P, M, len(keep))


def fiber(P: Polyhedron, x, n: int) -> Polyhedron:
    """Slice ``{y : (x, y) in P}`` where ``x`` fills the first ``n`` coordinates."""
    x = vec(x)
    rows = [(a[n:], b - dot(a[:n], x)) for a, b in P.hrep]
    return Polyhedron(P.dim - n, hrep=rows)


def conic_hull(dim: int, polys: Iterable[Polyhedron]) -> Polyhedron:
    """Closed convex cone generated by a finite family of cones."""
    rays, lines = [], []
    for p in polys:
        if p.is_empty():
            continue
        rays += [v for v in p.vertices if not is_zero(v)]
        rays += list(p.rays)
        lines += list(p.lines)
    return Polyhedron(dim, vertices=[(Fraction(0),) * dim], rays=rays, lines=lines).minimal()


def convex_hull(dim: int, polys: Iterable[Polyhedron]) -> Polyhedron:
    """Closed convex hull of a finite union of polyhedra."""
    verts, rays, lines = [], [], []
    for p in polys:
        if p.is_empty():
            continue
        verts += list(p.vertices)
        rays += list(p.rays)
        lines += list(p.lines)
    if not verts:
        return Polyhedron.empty(dim)
    return Polyhedron(dim, vertices=verts, rays=rays, lines=lines).minimal()

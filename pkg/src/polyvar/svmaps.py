"""Set-valued maps with polyhedral graphs and positively homogeneous prefans."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NonPolyhedralNorm, NotACone
from .polykernel import (
    PolyUnion,
    Polyhedron,
    convex_hull,
    fiber as poly_fiber,
    intersect,
    linear_image,
    project,
    relate,
    set_equal,
    uncovered_point,
)
from .polykernel.rational import as_scalar, dot, vec

# ---------------------------------------------------------------------------
# norms

NORM_KINDS = ("inf", "one", "two")


@dataclass(frozen=True)
class NormSpec:
    """A norm on the domain or codomain.  ``two`` is only for the oracle."""

    kind: str = "inf"
    space: str = "domain"

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.space not in ("domain", "codomain"):
            raise ValueError(f"unknown space {self.space!r}")

    @property
    def exact(self) -> bool:
        return self.kind != "two"

    def require_exact(self):
        if not self.exact:
            raise NonPolyhedralNorm("the 2-norm ball is not polyhedral")

    def dual(self) -> "NormSpec":
        kind = {"inf": "one", "one": "inf", "two": "two"}[self.kind]
        return NormSpec(kind, self.space)

    def value(self, x) -> Fraction:
        if self.kind == "inf":
            return max((abs(v) for v in x), default=Fraction(0))
        if self.kind == "one":
            return sum((abs(v) for v in x), Fraction(0))
        return Fraction(sum(float(v) ** 2 for v in x) ** 0.5)

    def ball_rows(self, dim: int) -> list[tuple]:
        """Rows ``g`` with unit ball ``{z : g . z <= 1 for all g}``."""
        self.require_exact()
        if self.kind == "inf":
            rows = []
            for i in range(dim):
                for s in (1, -1):
                    rows.append(tuple(Fraction(s if j == i else 0) for j in range(dim)))
            return rows
        return [tuple(Fraction(s) for s in signs) for signs in iproduct((1, -1), repeat=dim)]

    def unit_ball(self, dim: int) -> Polyhedron:
        return Polyhedron(dim, hrep=[(g, 1) for g in self.ball_rows(dim)])

    def linear_pieces(self, dim: int) -> list[tuple[Polyhedron, tuple]]:
        """Cones on which the norm is linear, with its gradient there."""
        self.require_exact()
        out = []
        if self.kind == "inf":
            for i in range(dim):
                for s in (1, -1):
                    c = tuple(Fraction(s if j == i else 0) for j in range(dim))
                    rows = [tuple(Fraction(-s if j == i else 0) for j in range(dim))]
                    for j in range(dim):
                        if j != i:
                            for t in (1, -1):
                                r = [Fraction(0)] * dim
                                r[j] = Fraction(t)
                                r[i] -= s
                                rows.append(tuple(r))
                    out.append((Polyhedron.cone(dim, rows), c))
        else:
            for signs in iproduct((1, -1), repeat=dim):
                c = tuple(Fraction(s) for s in signs)
                rows = [tuple(Fraction(-signs[i] if j == i else 0) for j in range(dim)) for i in range(dim)]
                out.append((Polyhedron.cone(dim, rows), c))
        return out


@dataclass(frozen=True)
class NormPair:
    """Norms on ``X`` (domain) and ``Y`` (codomain)."""

    domain: NormSpec = NormSpec("inf", "domain")
    codomain: NormSpec = NormSpec("inf", "codomain")

    @classmethod
    def of(cls, x_kind: str = "inf", y_kind: Optional[str] = None) -> "NormPair":
        return cls(NormSpec(x_kind, "domain"), NormSpec(y_kind or x_kind, "codomain"))

    @property
    def exact(self) -> bool:
        return self.domain.exact and self.codomain.exact

    def describe(self) -> dict:
        return {
            "domain": self.domain.kind,
            "codomain": self.codomain.kind,
            "domain_dual": self.domain.dual().kind,
            "codomain_dual": self.codomain.dual().kind,
        }


DEFAULT_NORMS = NormPair()

# ---------------------------------------------------------------------------
# maps


class PwpMap:
    """A set-valued map ``R^n => R^m`` whose graph is a finite union of polyhedra."""

    def __init__(self, n: int, m: int, graph):
        if isinstance(graph, Polyhedron):
            graph = PolyUnion(graph.dim, [graph])
        elif not isinstance(graph, PolyUnion):
            graph = PolyUnion(n + m, list(graph))
        if graph.dim != n + m:
            raise DimensionMismatch(f"graph dimension {graph.dim} != {n} + {m}")
        self.n, self.m, self.graph = n, m, graph

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.m}, pieces={len(self.graph)})"

    def fiber(self, x) -> PolyUnion:
        x = vec(x)
        if len(x) != self.n:
            raise DimensionMismatch("point dimension")
        return PolyUnion(self.m, [f for p in self.graph if not (f := poly_fiber(p, x, self.n)).is_empty()])

    def __call__(self, x) -> PolyUnion:
        return self.fiber(x)

    def contains(self, x, y) -> bool:
        return self.graph.contains(vec(tuple(x) + tuple(y)))

    def invert(self) -> "PwpMap":
        perm = list(range(self.n, self.n + self.m)) + list(range(self.n))
        return type(self)(self.m, self.n, self.graph.permute(perm))

    def graph_equal(self, other: "PwpMap") -> bool:
        return (self.n, self.m) == (other.n, other.m) and set_equal(self.graph, other.graph)


class PHMap(PwpMap):
    """Positively homogeneous map: graph is a finite union of polyhedral cones."""

    def __init__(self, n: int, m: int, graph):
        super().__init__(n, m, graph)
        for p in self.graph:
            if not p.is_empty() and not p.is_cone:
                raise NotACone("PHMap pieces must be cones")


def fiber(S: PwpMap, x) -> PolyUnion:
    return S.fiber(x)


def invert(S: PwpMap) -> PwpMap:
    return S.invert()


# ---------------------------------------------------------------------------
# prefans


@dataclass(frozen=True)
class PrefanCell:
    domain: Polyhedron  # cone K in R^n
    graph: Polyhedron  # cone C in R^{n+m} over K


class Prefan:
    """A positively homogeneous map given by a fan of domain cones and a
    convex conic graph piece over each cone."""

    def __init__(self, n: int, m: int, cells: Iterable, norms: NormPair = DEFAULT_NORMS):
        cs = []
        for c in cells:
            if not isinstance(c, PrefanCell):
                c = PrefanCell(*c)
            if c.domain.dim != n or c.graph.dim != n + m:
                raise DimensionMismatch("prefan cell dimensions")
            cs.append(c)
        self.n, self.m, self.cells, self.norms = n, m, tuple(cs), norms

    def __repr__(self):
        return f"Prefan(n={self.n}, m={self.m}, cells={len(self.cells)})"

    @classmethod
    def from_graphs(cls, n: int, m: int, graphs: Iterable[Polyhedron], norms: NormPair = DEFAULT_NORMS):
        """Cells whose domains are the projections of the graph cones."""
        return cls(n, m, [PrefanCell(project(g, range(n)).minimal(), g) for g in graphs], norms)

    def graph(self) -> PolyUnion:
        return PolyUnion(self.n + self.m, [c.graph for c in self.cells])

    def as_phmap(self) -> PHMap:
        return PHMap(self.n, self.m, self.graph())

    def fiber(self, p) -> Polyhedron:
        """``H(p)`` as a single polyhedron (empty outside the fan)."""
        p = vec(p)
        if len(p) != self.n:
            raise DimensionMismatch("point dimension")
        for c in self.cells:
            if c.domain.contains(p):
                return poly_fiber(c.graph, p, self.n)
        return Polyhedron.empty(self.m)

    def __call__(self, p) -> Polyhedron:
        return self.fiber(p)

    def fibers(self, p) -> list[Polyhedron]:
        p = vec(p)
        return [poly_fiber(c.graph, p, self.n) for c in self.cells if c.domain.contains(p)]

    def with_norms(self, norms: NormPair) -> "Prefan":
        return Prefan(self.n, self.m, self.cells, norms)

    def scaled(self, k) -> "Prefan":
        """``(kH)(p) = k H(p)``."""
        k = as_scalar(k)
        M = [[Fraction(int(i == j)) * (1 if i < self.n else k) for j in range(self.n + self.m)]
             for i in range(self.n + self.m)]
        return Prefan(self.n, self.m,
                      [PrefanCell(c.domain, linear_image(c.graph, M, self.n + self.m).minimal())
                       for c in self.cells], self.norms)


@dataclass
class Violation:
    axiom: str
    witness: Optional[tuple]
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "detail": self.detail,
        }


@dataclass
class PrefanReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def __str__(self):
        if self.ok:
            return "prefan: pass"
        v = self.violations[0]
        w = "" if v.witness is None else " at p=(" + ", ".join(str(x) for x in v.witness) + ")"
        return f"prefan: {v.axiom}{w} {v.detail}".rstrip()


def validate_prefan(H: Prefan) -> PrefanReport:
    """Check the prefan axioms and report each violation with a witness."""
    rep = PrefanReport()
    n, m = H.n, H.m
    for i, c in enumerate(H.cells):
        for name, P in (("domain", c.domain), ("graph", c.graph)):
            if P.is_empty() or not P.is_cone:
                rep.violations.append(Violation("cone", None, f"cell {i} {name} is not a convex cone"))
    if not rep.ok:
        return rep
    full = [c.domain for c in H.cells if c.domain.is_full_dim]
    w = uncovered_point(Polyhedron.space(n), PolyUnion(n, full))
    if w is not None:
        rep.violations.append(Violation("coverage", w, "full-dimensional cells miss this direction"))
    for i, c in enumerate(H.cells):
        r = relate(project(c.graph, range(n)), c.domain)
        if r.kind != "equal":
            wit = r.b_not_a or r.a_not_b
            what = "empty fiber" if r.b_not_a is not None else "graph leaves its domain cell"
            rep.violations.append(Violation("nonempty", wit, f"cell {i}: {what}"))
        at0 = poly_fiber(c.graph, (0,) * n, n)
        if not at0.is_bounded or len(at0.vertices) > 1:
            wit = c.domain.relint_point()
            rep.violations.append(Violation("bounded", wit, f"cell {i}: unbounded fiber, outer norm infinite"))
    for i, ci in enumerate(H.cells):
        for j in range(i + 1, len(H.cells)):
            cj = H.cells[j]
            O = intersect(ci.domain, cj.domain)
            if O.is_empty() or not O.nonzero_generators():
                continue
            lift = [(tuple(a) + (Fraction(0),) * m, b) for a, b in O.hrep]
            gi = intersect(ci.graph, Polyhedron(n + m, hrep=lift))
            gj = intersect(cj.graph, Polyhedron(n + m, hrep=lift))
            if set_equal(gi, gj):
                continue
            p = None
            for g in O.nonzero_generators():
                if not set_equal(poly_fiber(gi, g, n), poly_fiber(gj, g, n)):
                    p = g
                    break
            if p is None:
                r = relate(gi, gj)
                p = (r.a_not_b or r.b_not_a)[:n]
            fi, fj = poly_fiber(gi, p, n), poly_fiber(gj, p, n)
            hull = convex_hull(m, [fi, fj])
            if set_equal(hull, PolyUnion(m, [fi, fj])):
                rep.violations.append(Violation("overlap", p, f"cells {i},{j} give different fibers"))
            else:
                rep.violations.append(Violation("convex", p, f"cells {i},{j}: fiber is not convex"))
    return rep


def _lifted_sum(C: Polyhedron, L: Polyhedron, c: tuple, delta: Fraction,
                ball_rows: list, n: int, m: int) -> Polyhedron:
    """``{(p, y + z) : (p, y) in C, p in L, z in delta (c.p) ball}``."""
    D = n + 2 * m
    zero_m = (Fraction(0),) * m
    rows = [(tuple(a[:n]) + tuple(a[n:]) + zero_m, b) for a, b in C.hrep]
    rows += [(tuple(a) + zero_m + zero_m, b) for a, b in L.hrep]
    for g in ball_rows:
        rows.append((tuple(-delta * x for x in c) + zero_m + tuple(g), Fraction(0)))
    lifted = Polyhedron(D, hrep=rows)
    M = []
    for i in range(n):
        M.append([Fraction(int(j == i)) for j in range(D)])
    for i in range(m):
        M.append([Fraction(int(j == n + i or j == n + m + i)) for j in range(D)])
    return linear_image(lifted, M, n + m).minimal()


def inflate(H: Prefan, delta, norms: Optional[NormPair] = None) -> Prefan:
    """``(H + delta)(p) = H(p) + delta ||p|| B`` as a new prefan."""
    delta = as_scalar(delta)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    norms = norms or H.norms
    norms.domain.require_exact()
    norms.codomain.require_exact()
    if delta == 0:
        return H
    n, m = H.n, H.m
    ball = norms.codomain.ball_rows(m)
    cells = []
    for cell in H.cells:
        for L, c in norms.domain.linear_pieces(n):
            K = intersect(cell.domain, L)
            if K.is_empty() or K.affine_dim < cell.domain.affine_dim:
                continue
            cells.append(PrefanCell(K.minimal(), _lifted_sum(cell.graph, L, c, delta, ball, n, m)))
    return Prefan(n, m, cells, norms)


def ball_prefan(n: int, m: int, kappa, norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(w) = kappa ||w|| B``: the prefan behind the Aubin property."""
    kappa = as_scalar(kappa)
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    ball = norms.codomain.ball_rows(m)
    cells = []
    for L, c in norms.domain.linear_pieces(n):
        rows = [(tuple(a) + (Fraction(0),) * m, b) for a, b in L.hrep]
        for g in ball:
            rows.append((tuple(-kappa * x for x in c) + tuple(g), Fraction(0)))
        cells.append(PrefanCell(L.minimal(), Polyhedron(n + m, hrep=rows).minimal()))
    return Prefan(n, m, cells, norms)

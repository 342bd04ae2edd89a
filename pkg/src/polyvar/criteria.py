"""Inner/outer norms, Lipschitz moduli and certificates of generalized derivatives."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, InvalidPrefan, RouteDisagreement
from .polykernel import (
    PolyUnion,
    Polyhedron,
    coverage,
    fiber as poly_fiber,
    intersect,
    project,
    solve_lp,
)
from .polykernel.arrangement import _sign_faces
from .polykernel.rational import canonical_line, dot, to_fractions, vec
from .svmaps import DEFAULT_NORMS, NormPair, NormSpec, PHMap, Prefan, PwpMap, validate_prefan
from .varcalc import (
    _point,
    graphical_derivative,
    is_graphically_regular,
    limit_cones,
    limiting_normal_cone,
)

INF = float("inf")

ROUTES = ("primal-tangent", "primal-convexified", "dual-normal", "clarke-fastpath")
ROUTE_ALIASES = {
    "primal": "primal-tangent",
    "tangent": "primal-tangent",
    "convexified": "primal-convexified",
    "dual": "dual-normal",
    "normal": "dual-normal",
    "clarke": "clarke-fastpath",
    "auto": "auto",
}


def _route(name: str) -> str:
    name = ROUTE_ALIASES.get(name, name)
    if name not in ROUTES and name != "auto":
        raise ValueError(f"unknown route {name!r}")
    return name


@dataclass
class Certificate:
    """Outcome of a ``lip`` or ``certify`` query."""

    query: str
    verdict: str  # holds | fails | not-applicable
    route: str
    witness: Optional[dict] = None
    modulus: Optional[Fraction | float] = None
    norms: NormPair = DEFAULT_NORMS
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, (tuple, list)):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, Fraction):
                return str(v)
            if v == INF:
                return "inf"
            return v

        return {
            "query": self.query,
            "verdict": self.verdict,
            "route": self.route,
            "witness": enc(self.witness),
            "modulus": enc(self.modulus),
            "norms": self.norms.describe(),
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# norms of positively homogeneous maps


def _epigraph_bounds(piece: Polyhedron, n: int, m: int, norm: NormSpec):
    """Write ``min{||z|| : (w, z) in piece}`` as ``max_k l_k . w`` on a domain.

    Returns ``(lower, domain_rows)``: linear minorants ``l_k`` and rows ``a``
    with ``a . w <= 0`` describing the projection of the piece.
    """
    rows = [(tuple(a) + (Fraction(0),), b) for a, b in piece.hrep]
    for g in norm.ball_rows(m):
        rows.append(((Fraction(0),) * n + tuple(g) + (Fraction(-1),), Fraction(0)))
    lifted = Polyhedron(n + m + 1, hrep=rows)
    E = project(lifted, list(range(n)) + [n + m])
    lower, domain = [], []
    for a, b in E.minimal().hrep:
        alpha, beta = a[:n], a[n]
        if beta < 0:
            lower.append(tuple(x / -beta for x in alpha))
        elif beta == 0:
            if any(x != 0 for x in alpha):
                domain.append(alpha)
    if not lower:
        lower.append((Fraction(0),) * n)
    return list(dict.fromkeys(lower)), domain


def _norm_boundaries(norm: NormSpec, n: int) -> list[tuple]:
    out = []
    for i in range(n):
        out.append(tuple(Fraction(int(j == i)) for j in range(n)))
        if norm.kind == "inf":
            for j in range(i + 1, n):
                for s in (1, -1):
                    out.append(tuple(Fraction(1 if k == i else (-s if k == j else 0)) for k in range(n)))
    return out


@dataclass(frozen=True)
class NormValue:
    value: Fraction | float
    witness: Optional[tuple] = None  # unit direction attaining (or exceeding) the value


def inner_norm_detail(G: PwpMap, norms: NormPair = DEFAULT_NORMS) -> NormValue:
    """``sup_{||w||<=1} inf_{z in G(w)} ||z||`` exactly."""
    norms.domain.require_exact()
    norms.codomain.require_exact()
    n, m = G.n, G.m
    pieces = [P for P in G.graph if not P.is_empty()]
    data = [_epigraph_bounds(P, n, m, norms.codomain) for P in pieces]
    hyper = {}
    for _, dom in data:
        for a in dom:
            hyper.setdefault(to_fractions(canonical_line(a)), None)
    for a in _norm_boundaries(norms.domain, n):
        hyper.setdefault(to_fractions(canonical_line(a)), None)
    hyper = list(hyper)
    cells = norms.domain.linear_pieces(n)
    best = NormValue(Fraction(0))
    for signs, d in _sign_faces(hyper, n):
        if all(v == 0 for v in d):
            continue
        active = [k for k, (_, dom) in enumerate(data) if all(dot(a, d) <= 0 for a in dom)]
        if not active:
            return NormValue(INF, d)
        active.sort(key=lambda k: len(data[k][0]))
        c = next(c for L, c in cells if L.contains(d))
        # face closure, on the unit sphere
        A_ub, b_ub, A_eq, b_eq = [], [], [], []
        for h, s in zip(hyper, signs):
            if s == 0:
                A_eq.append(tuple(h) + (0,))
                b_eq.append(0)
            else:
                A_ub.append(tuple(-s * x for x in h) + (0,))
                b_ub.append(0)
        A_eq.append(tuple(c) + (0,))
        b_eq.append(1)
        # branch on which minorant is the max for each active piece; the
        # choices are disjoint regions and a partial LP bounds its completions
        stack = [(0, A_ub, b_ub)]
        while stack:
            depth, ub, bb = stack.pop()
            if depth == len(active):
                continue
            low = data[active[depth]][0]
            for idx, top in enumerate(low):
                ub2 = ub + [tuple(-x for x in top) + (1,)]  # t <= top . w
                bb2 = bb + [0]
                for j, other in enumerate(low):
                    if j != idx:
                        ub2.append(tuple(o - x for o, x in zip(other, top)) + (0,))
                        bb2.append(0)
                res = solve_lp((0,) * n + (1,), ub2, bb2, A_eq, b_eq)
                if res.status != "optimal" or res.value <= best.value:
                    continue
                if depth + 1 == len(active):
                    best = NormValue(res.value, res.x[:n])
                else:
                    stack.append((depth + 1, ub2, bb2))
    return best


def inner_norm(G: PwpMap, norms: NormPair = DEFAULT_NORMS) -> Fraction | float:
    return inner_norm_detail(G, norms).value


def outer_norm(G, norms: NormPair = DEFAULT_NORMS) -> Fraction | float:
    """``sup_{||w||<=1} sup_{z in G(w)} ||z||`` (``inf`` when unbounded)."""
    norms.domain.require_exact()
    norms.codomain.require_exact()
    if isinstance(G, Prefan):
        G = G.as_phmap()
    n, m = G.n, G.m
    ball = [(tuple(g) + (Fraction(0),) * m, Fraction(1)) for g in norms.domain.ball_rows(n)]
    best = Fraction(0)
    for P in G.graph:
        Q = intersect(P, Polyhedron(n + m, hrep=ball))
        if Q.is_empty():
            continue
        if any(any(x != 0 for x in r[n:]) for r in Q.rays + Q.lines):
            return INF
        for v in Q.vertices:
            best = max(best, norms.codomain.value(v[n:]))
    return best


# ---------------------------------------------------------------------------
# Lipschitz modulus


def lip_via_tangents(S: PwpMap, x, y, norms: NormPair = DEFAULT_NORMS,
                     convexified: bool = False) -> Fraction | float:
    """Largest inner norm over the limit cones of the (convexified) graphical derivative."""
    best = Fraction(0)
    for G in limit_cones(S, x, y, convexified):
        v = inner_norm(G, norms)
        if v == INF:
            return INF
        best = max(best, v)
    return best


def lip_via_normals(S: PwpMap, x, y, norms: NormPair = DEFAULT_NORMS) -> Fraction | float:
    """``sup ||u||_* / ||v||_*`` over limiting normals ``(u, v)``.

    Each convex piece of the normal cone is cut by ``||v||_* <= 1``; a
    recession direction with ``u != 0`` forces ``v = 0`` and an infinite
    modulus, otherwise the maximum of the convex ``||u||_*`` sits at a vertex.
    """
    du, dv = norms.domain.dual(), norms.codomain.dual()
    du.require_exact()
    dv.require_exact()
    n, m = S.n, S.m
    cut = [((Fraction(0),) * n + tuple(g), Fraction(1)) for g in dv.ball_rows(m)]
    best = Fraction(0)
    for P in limiting_normal_cone(S, x, y):
        Q = intersect(P, Polyhedron(n + m, hrep=cut))
        if any(any(t != 0 for t in r[:n]) for r in Q.rays + Q.lines):
            return INF
        for v in Q.vertices:
            best = max(best, du.value(v[:n]))
    return best


def lip(S: PwpMap, x, y, norms: NormPair = DEFAULT_NORMS, route: str = "auto") -> Certificate:
    """Modulus certificate; ``auto`` computes every route and insists they agree."""
    _point(S, x, y)
    route = {"primal": "primal-tangent", "tangent": "primal-tangent",
             "convexified": "primal-convexified", "dual": "dual-normal",
             "normal": "dual-normal"}.get(route, route)
    vals = {}
    if route in ("auto", "primal-tangent"):
        vals["primal-tangent"] = lip_via_tangents(S, x, y, norms, False)
    if route in ("auto", "primal-convexified"):
        vals["primal-convexified"] = lip_via_tangents(S, x, y, norms, True)
    if route in ("auto", "dual-normal"):
        vals["dual-normal"] = lip_via_normals(S, x, y, norms)
    if not vals:
        raise ValueError(f"unknown route {route!r}")
    if len(set(vals.values())) > 1:
        raise RouteDisagreement(f"lip routes disagree: {vals}")
    value = next(iter(vals.values()))
    notes = [f"{k}: {v}" for k, v in vals.items()]
    return Certificate("lip", "holds" if value != INF else "fails",
                       route if route != "auto" else "+".join(vals), None, value, norms, notes)


# ---------------------------------------------------------------------------
# certification


def _flip(P: Polyhedron) -> Polyhedron:
    """``sigma(P) = {(p, q) : (-p, -q) in P}``."""
    return Polyhedron(P.dim, hrep=[(tuple(-x for x in a), b) for a, b in P.hrep])


def _primal_check(G: PwpMap, H: Prefan):
    cones = [intersect(g, _flip(c.graph)) for g in G.graph for c in H.cells]
    return coverage(cones, n=G.n)


def _meets_negated(G: PwpMap, H: Prefan, p) -> bool:
    """``G(p) & -H(-p)`` nonempty (pointwise recheck of a primal witness)."""
    p = vec(p)
    negH = [_flip_fiber(F) for F in H.fibers(tuple(-x for x in p))]
    for P in G.graph:
        Gp = poly_fiber(P, p, G.n)
        for F in negH:
            if not intersect(Gp, F).is_empty():
                return True
    return False


def _flip_fiber(F: Polyhedron) -> Polyhedron:
    return Polyhedron(F.dim, hrep=[(tuple(-x for x in a), b) for a, b in F.hrep])


def _dual_check(N: PolyUnion, H: Prefan):
    """Exact whole-cone test of ``exists y in H(p): <v, y> >= -<u, p>``.

    For a cell ``{(p, y) : A p + B y <= 0}`` LP duality turns the inner
    maximum into ``min{-lam . A p : lam >= 0, B^T lam = v}``, so the
    condition over a convex normal piece becomes ``<A^T lam - u, p> <= 0``
    for every ``(lam, u)`` with ``lam >= 0`` and ``(u, B^T lam)`` normal.
    That is a finite check between generators.
    """
    n, m = H.n, H.m
    for P in N:
        for cell in H.cells:
            rows = [a for a, _ in cell.graph.minimal().hrep]
            R = len(rows)
            A = [r[:n] for r in rows]
            B = [r[n:] for r in rows]
            # variables (lam in R^R, u in R^n)
            cone_rows = []
            for k in range(R):
                cone_rows.append(tuple(Fraction(-1) if j == k else Fraction(0) for j in range(R + n)))
            for e, _ in P.hrep:
                eu, ev = e[:n], e[n:]
                lam_coef = tuple(dot(B[k], ev) for k in range(R))
                cone_rows.append(lam_coef + tuple(eu))
            L = Polyhedron.cone(R + n, cone_rows)
            gens = L.nonzero_generators()
            ks = cell.domain.nonzero_generators()
            for g in gens:
                lam, u = g[:R], g[R:]
                w = tuple(sum((lam[k] * A[k][i] for k in range(R)), Fraction(0)) - u[i] for i in range(n))
                for k in ks:
                    if dot(w, k) > 0:
                        v = tuple(sum((lam[r] * B[r][j] for r in range(R)), Fraction(0)) for j in range(m))
                        return {"p": tuple(k), "u": tuple(u), "v": v}
    return None


def dual_violated_at(H: Prefan, p, u, v) -> bool:
    """``max_{y in H(p)} <v, y> < -<u, p>``: the normal ``(u, v)`` rules out ``p``."""
    F = H.fiber(p)
    if F.is_empty():
        return True
    return F.support(v) < -dot(u, p)


def _primal_route(S, x, y, H, convexified, notes):
    L = limit_cones(S, x, y, convexified)
    notes.append(f"{len(L)} limit cone(s){' (convexified)' if convexified else ''}")
    for i, G in enumerate(L):
        res = _primal_check(G, H)
        if not res.covered:
            return {"p": res.witness, "cone": i, "convexified": convexified,
                    "cone_sample": L.sample_points[i]}
    return None


def _fast_route(S, x, y, H, notes):
    G = graphical_derivative(S, x, y)
    notes.append("graph is Clarke regular: checking DS(x|y) only")
    res = _primal_check(G, H)
    return None if res.covered else {"p": res.witness, "cone": "DS"}


def _dual_route(S, x, y, H, notes):
    N = limiting_normal_cone(S, x, y)
    notes.append(f"limiting normal cone has {len(N)} convex piece(s)")
    return _dual_check(N, H)


def certify_prefan(S: PwpMap, x, y, H: Prefan, route: str = "auto",
                   strict: bool = False) -> Certificate:
    """Decide pseudo strict H-differentiability of ``S`` at ``(x, y)``."""
    _point(S, x, y)
    if (H.n, H.m) != (S.n, S.m):
        raise DimensionMismatch(f"prefan is {H.n}->{H.m}, map is {S.n}->{S.m}")
    route = _route(route)
    report = validate_prefan(H)
    if not report.ok:
        if strict:
            raise InvalidPrefan(report)
        v = report.first()
        return Certificate("certify", "not-applicable", route, None, None, H.norms,
                           [str(report)] + [f"{w.axiom}: {w.detail}" for w in report.violations[1:]])
    notes: list = []
    if route == "auto":
        if is_graphically_regular(S, x, y):
            route = "clarke-fastpath"
        else:
            notes.append("graph not Clarke regular: primal and dual routes")
            w1 = _primal_route(S, x, y, H, False, notes)
            w2 = _dual_route(S, x, y, H, notes)
            if (w1 is None) != (w2 is None):
                raise RouteDisagreement(f"primal {w1} vs dual {w2}")
            w = w1 or w2
            return _finish(S, x, y, H, "primal-tangent+dual-normal", w, notes)
    if route == "clarke-fastpath":
        w = _fast_route(S, x, y, H, notes)
    elif route == "primal-tangent":
        w = _primal_route(S, x, y, H, False, notes)
    elif route == "primal-convexified":
        w = _primal_route(S, x, y, H, True, notes)
    else:
        w = _dual_route(S, x, y, H, notes)
    return _finish(S, x, y, H, route, w, notes)


def _finish(S, x, y, H, route, w, notes) -> Certificate:
    if w is None:
        return Certificate("certify", "holds", route, None, None, H.norms, notes)
    if not recheck_witness(S, x, y, H, w):
        raise AssertionError(f"witness {w} does not re-verify")
    notes.append("witness re-verified pointwise")
    return Certificate("certify", "fails", route, w, None, H.norms, notes)


def recheck_witness(S: PwpMap, x, y, H: Prefan, w: dict) -> bool:
    """Re-run the pointwise emptiness test behind a failure witness."""
    p = w["p"]
    if all(t == 0 for t in p):
        return False
    if "u" in w:
        N = limiting_normal_cone(S, x, y)
        if not N.contains(tuple(w["u"]) + tuple(w["v"])):
            return False
        return dual_violated_at(H, p, w["u"], w["v"])
    if w.get("cone") == "DS":
        G = graphical_derivative(S, x, y)
    else:
        G = limit_cones(S, x, y, w.get("convexified", False))[w["cone"]]
    return not _meets_negated(G, H, p)


def kappa_ball_certify(S: PwpMap, x, y, kappa, norms: NormPair = DEFAULT_NORMS,
                       route: str = "auto") -> Certificate:
    """Aubin property with constant ``kappa`` as certification of ``kappa ||w|| B``."""
    from .svmaps import ball_prefan

    return certify_prefan(S, x, y, ball_prefan(S.n, S.m, kappa, norms), route)

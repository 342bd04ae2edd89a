"""Sampling falsifier for the defining inclusion of pseudo strict H-differentiability.

Point selection is heuristic; every inclusion test on the chosen slices is
exact.  Finding nothing is not a proof.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidPoint
from .polykernel import PolyUnion, Polyhedron, incident_faces, intersect, minkowski, solve_lp
from .polykernel.rational import as_scalar, vec
from .polykernel.union import uncovered_point
from .svmaps import DEFAULT_NORMS, NormPair, PHMap, Prefan, PwpMap


@dataclass(frozen=True)
class OracleBudget:
    delta_grid: tuple = (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64))
    radius_grid: tuple = (Fraction(1), Fraction(1, 8))
    samples_per_pair: int = 6
    seed: int = 0

    def __post_init__(self):
        for name in ("delta_grid", "radius_grid"):
            g = tuple(as_scalar(v) for v in getattr(self, name))
            if not g or any(v <= 0 for v in g) or any(a <= b for a, b in zip(g, g[1:])):
                raise ValueError(f"{name} must be nonempty, positive and strictly decreasing")
            object.__setattr__(self, name, g)
        if self.samples_per_pair < 0:
            raise ValueError("samples_per_pair must be nonnegative")


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class Violation:
    x: tuple
    x_prime: tuple
    delta: Fraction
    radius: Fraction
    y: tuple

    def to_dict(self) -> dict:
        s = lambda v: [str(t) for t in v]
        return {"x": s(self.x), "x_prime": s(self.x_prime), "delta": str(self.delta),
                "radius": str(self.radius), "y": s(self.y)}


@dataclass(frozen=True)
class OracleResult:
    violation: Optional[Violation] = None
    pairs_tested: int = 0

    @property
    def found(self) -> bool:
        return self.violation is not None

    def to_dict(self) -> dict:
        return {
            "outcome": "violation" if self.found else "no-violation-found",
            "pairs_tested": self.pairs_tested,
            "violation": self.violation.to_dict() if self.found else None,
        }


def _box(center: tuple, r: Fraction) -> Polyhedron:
    d = len(center)
    rows = []
    for i in range(d):
        e = tuple(Fraction(int(j == i)) for j in range(d))
        rows.append((e, center[i] + r))
        rows.append((tuple(-x for x in e), -(center[i] - r)))
    return Polyhedron(d, hrep=rows)


def _h_fibers(H, w) -> list[Polyhedron]:
    if isinstance(H, Prefan):
        F = H.fiber(w)
        return [] if F.is_empty() else [F]
    return [F for F in H.fiber(w).pieces]


def _inflated(H, w, delta, norms: NormPair) -> list[Polyhedron]:
    """Pieces of ``H(w) + delta ||w|| B``."""
    r = delta * norms.domain.value(w)
    out = []
    for F in _h_fibers(H, w):
        if r > 0:
            ball = norms.codomain.unit_ball(F.dim)
            scaled = Polyhedron(F.dim, vertices=[tuple(r * x for x in v) for v in ball.vertices])
            F = minkowski(F, scaled)
        out.append(F)
    return out


def _right_side(S: PwpMap, H, x, xp, delta, norms) -> PolyUnion:
    w = tuple(a - b for a, b in zip(x, xp))
    Sx = S.fiber(xp).pieces
    Hs = _inflated(H, w, delta, norms)
    return PolyUnion(S.m, [minkowski(P, F) for P in Sx for F in Hs])


def _nice_witness(left: PolyUnion, right: PolyUnion, prefer: Sequence[tuple]) -> Optional[tuple]:
    cands = list(prefer)
    for P in left.pieces:
        cands.extend(P.vertices)
    for y in cands:
        if left.contains(y) and not right.contains(y):
            return tuple(y)
    return uncovered_point(left, right)


def inclusion_gap(S: PwpMap, H, x, xp, ybar, radius, delta, norms=DEFAULT_NORMS) -> Optional[tuple]:
    """A point of ``S(x) & V`` outside ``S(x') + (H + delta)(x - x')``, if any."""
    V = _box(ybar, radius)
    left = PolyUnion(S.m, [q for P in S.fiber(x).pieces if not (q := intersect(P, V)).is_empty()])
    if left.is_empty():
        return None
    right = _right_side(S, H, x, xp, delta, norms)
    return _nice_witness(left, right, [ybar])


def _scale_into(v: tuple, r: Fraction) -> tuple:
    m = max((abs(t) for t in v), default=Fraction(0))
    if m == 0:
        return v
    k = min(Fraction(1), r / (2 * m))
    return tuple(k * t for t in v)


def _candidate_pairs(S: PwpMap, xbar, ybar, r: Fraction, rng: random.Random,
                     samples: int, seeds: Sequence[tuple]) -> list[tuple]:
    n = S.n
    add = lambda a, b: tuple(s + t for s, t in zip(a, b))
    pts = [xbar]
    for i in range(n):
        for s in (1, -1):
            for k in (1, Fraction(1, 2)):
                pts.append(tuple(xbar[j] + (s * k * r if j == i else 0) for j in range(n)))
    pairs = [(a, b) for a in pts for b in pts if a != b]
    base = tuple(xbar) + tuple(ybar)
    dirs = [tuple(p) for p in seeds]
    try:
        faces = incident_faces(S.graph, base)
    except Exception:
        faces = []
    for f in faces:
        off = _scale_into(tuple(a - b for a, b in zip(f.sample_point, base)), r)
        xf = add(xbar, off[:n])
        step = max((abs(t) for t in off), default=Fraction(0)) / 4 or r / 4
        for p in dirs + [tuple(Fraction(int(j == i)) * s for j in range(n))
                         for i in range(n) for s in (1, -1)]:
            pm = max(abs(t) for t in p)
            if pm == 0:
                continue
            q = tuple(step * t / pm for t in p)
            pairs.append((xf, add(xf, q)))
            pairs.append((add(xf, q), xf))
    den = 16
    for _ in range(samples):
        a = tuple(xbar[j] + Fraction(rng.randint(-den, den), den) * r for j in range(n))
        b = tuple(xbar[j] + Fraction(rng.randint(-den, den), den) * r for j in range(n))
        if a != b:
            pairs.append((a, b))
    seen, out = set(), []
    for pr in pairs:
        if pr not in seen:
            seen.add(pr)
            out.append(pr)
    return out


def _check_point(S: PwpMap, xbar, ybar):
    xbar, ybar = vec(xbar), vec(ybar)
    if len(xbar) != S.n or len(ybar) != S.m or not S.contains(xbar, ybar):
        raise InvalidPoint("base point is not on the graph")
    return xbar, ybar


def falsify_definition(S: PwpMap, xbar, ybar, H: Union[PHMap, Prefan],
                       budget: OracleBudget = DEFAULT_BUDGET, norms: NormPair = DEFAULT_NORMS,
                       seeds: Iterable = ()) -> OracleResult:
    """Search for ``x, x'`` near ``xbar`` and ``y`` near ``ybar`` with
    ``y in S(x)`` but ``y`` outside ``S(x') + (H + delta)(x - x')``.

    ``seeds`` are extra directions ``p`` tried from every face sample point.
    """
    xbar, ybar = _check_point(S, xbar, ybar)
    rng = random.Random(budget.seed)
    seeds = [vec(p) for p in seeds]
    tested = 0
    for r in budget.radius_grid:
        pairs = _candidate_pairs(S, xbar, ybar, r, rng, budget.samples_per_pair, seeds)
        for delta in budget.delta_grid:
            for x, xp in pairs:
                tested += 1
                y = inclusion_gap(S, H, x, xp, ybar, r, delta, norms)
                if y is not None:
                    return OracleResult(Violation(x, xp, delta, r, y), tested)
    return OracleResult(None, tested)


def recheck_violation(S: PwpMap, H, ybar, v: Violation, norms: NormPair = DEFAULT_NORMS) -> bool:
    """Independent recheck: ``y`` lies in ``S(x) & V`` and outside the right side."""
    V = _box(vec(ybar), v.radius)
    if not (S.contains(v.x, v.y) and V.contains(v.y)):
        return False
    return not _right_side(S, H, v.x, v.x_prime, v.delta, norms).contains(v.y)


def _distance(y: tuple, P: Polyhedron, norm) -> Fraction:
    """Exact polyhedral-norm distance from ``y`` to ``P``."""
    m = len(y)
    k = m if norm.kind == "one" else 1
    A_ub, b_ub = [], []
    for a, b in P.hrep:
        A_ub.append(tuple(a) + (0,) * k)
        b_ub.append(b)
    for j in range(m):
        for s in (1, -1):
            # s (y_j - z_j) <= t
            row = [Fraction(0)] * (m + k)
            row[j] = Fraction(-s)
            row[m + (j if k > 1 else 0)] = Fraction(-1)
            A_ub.append(tuple(row))
            b_ub.append(-s * y[j])
    res = solve_lp((0,) * m + (1,) * k, A_ub, b_ub, maximize=False)
    return res.value


def sample_lip_lower_bound(S: PwpMap, xbar, ybar, budget: OracleBudget = DEFAULT_BUDGET,
                           norms: NormPair = DEFAULT_NORMS) -> Fraction | float:
    """Largest observed ``dist(y, S(x')) / ||x - x'||`` over sampled triples."""
    xbar, ybar = _check_point(S, xbar, ybar)
    norms.domain.require_exact()
    norms.codomain.require_exact()
    rng = random.Random(budget.seed)
    best = Fraction(0)
    for r in budget.radius_grid:
        V = _box(ybar, r)
        for x, xp in _candidate_pairs(S, xbar, ybar, r, rng, budget.samples_per_pair, ()):
            ys = [ybar] if S.contains(x, ybar) else []
            for P in S.fiber(x).pieces:
                Q = intersect(P, V)
                if not Q.is_empty():
                    ys.extend(Q.vertices)
            if not ys:
                continue
            target = S.fiber(xp).pieces
            gap = norms.domain.value(tuple(a - b for a, b in zip(x, xp)))
            for y in ys:
                if not target:
                    return float("inf")
                d = min(_distance(y, P, norms.codomain) for P in target)
                best = max(best, d / gap)
    return best

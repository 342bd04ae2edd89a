"""Constraint systems ``S(x) = F(x) - D`` linearised at a point."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .criteria import Certificate, INF
from .errors import CQFails, DimensionMismatch, InvalidPrefan, ResidualNotInD, RouteDisagreement, WrongDShape
from .polykernel import Polyhedron, coverage, intersect, polar, set_equal, solve_lp
from .polykernel.rational import as_scalar, dot, rank, vec
from .svmaps import DEFAULT_NORMS, NormPair, PHMap, Prefan, PwpMap, validate_prefan


@dataclass(frozen=True)
class ConstraintSystem:
    """First-order data of ``S(x) = F(x) - D`` at ``(xbar, ubar)``.

    ``jacobian`` is the ``m x n`` matrix of ``F`` at ``xbar``; ``residual``
    is ``F(xbar) - ubar`` and must lie in the polyhedron ``D``.
    """

    jacobian: tuple
    D: Polyhedron
    residual: tuple

    def __post_init__(self):
        J = tuple(vec(row) for row in self.jacobian)
        object.__setattr__(self, "jacobian", J)
        object.__setattr__(self, "residual", vec(self.residual))
        if not J:
            raise DimensionMismatch("empty jacobian")
        n = len(J[0])
        if any(len(r) != n for r in J):
            raise DimensionMismatch("ragged jacobian")
        if self.D.dim != len(J) or len(self.residual) != len(J):
            raise DimensionMismatch("D, residual and jacobian rows must share dimension m")
        if not self.D.contains(self.residual):
            raise ResidualNotInD("residual F(xbar) - ubar is not in D")

    @property
    def m(self) -> int:
        return len(self.jacobian)

    @property
    def n(self) -> int:
        return len(self.jacobian[0])

    def jt(self, y) -> tuple:
        """``J^T y``."""
        return tuple(sum((self.jacobian[i][j] * y[i] for i in range(self.m)), Fraction(0))
                     for j in range(self.n))

    def tangent_D(self) -> Polyhedron:
        rows = [a for a, b in self.D.hrep if dot(a, self.residual) == b]
        return Polyhedron.cone(self.m, rows).minimal()

    def normal_D(self) -> Polyhedron:
        return polar(self.tangent_D())


def mfcq_form(m: int, r: int) -> Polyhedron:
    """``D = {0}^r x R_-^(m-r)``."""
    e = lambda i: tuple(Fraction(int(j == i)) for j in range(m))
    return Polyhedron.from_hrep(m, [(e(i), 0) for i in range(r, m)], [(e(i), 0) for i in range(r)])


def inverse_tangent(sys: ConstraintSystem) -> PHMap:
    """Graph ``{(p, q) : J q - p in T_D(residual)}`` of ``D(S^-1)``."""
    rows = []
    for t, _ in sys.tangent_D().hrep:
        rows.append(tuple(-x for x in t) + sys.jt(t))
    return PHMap(sys.m, sys.n, [Polyhedron.cone(sys.m + sys.n, rows).minimal()])


@dataclass(frozen=True)
class CQResult:
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def check_cq(sys: ConstraintSystem) -> CQResult:
    """``y in N_D(residual)`` and ``J^T y = 0`` only for ``y = 0``."""
    K = sys.normal_D()
    ker = Polyhedron.from_hrep(sys.m, [], [(tuple(sys.jacobian[i][j] for i in range(sys.m)), 0)
                                             for j in range(sys.n)])
    both = intersect(K, ker).minimal()
    gens = both.nonzero_generators()
    if gens:
        return CQResult(False, gens[0])
    return CQResult(True)


def _infer_r(sys: ConstraintSystem) -> int:
    for r in range(sys.m + 1):
        if set_equal(sys.D, mfcq_form(sys.m, r)):
            return r
    raise WrongDShape("D is not of the form {0}^r x R_-^(m-r)")


def check_mfcq(sys: ConstraintSystem, r: Optional[int] = None, cross_check: bool = True) -> CQResult:
    """MFCQ: full-rank equality block and a direction strictly decreasing the
    active inequalities while keeping the equalities."""
    if r is None:
        r = _infer_r(sys)
    elif not set_equal(sys.D, mfcq_form(sys.m, r)):
        raise WrongDShape(f"D is not {{0}}^{r} x R_-^{sys.m - r}")
    n, J = sys.n, sys.jacobian
    result: CQResult
    if rank(J[:r]) < r:
        result = CQResult(False)
    else:
        active = [i for i in range(r, sys.m) if sys.residual[i] == 0]
        A_ub, b_ub = [], []
        for i in active:
            A_ub.append(tuple(J[i]) + (1,))
            b_ub.append(0)
        for j in range(n):
            for s in (1, -1):
                A_ub.append(tuple(Fraction(s if k == j else 0) for k in range(n)) + (0,))
                b_ub.append(1)
        A_ub.append((0,) * n + (1,))
        b_ub.append(1)
        A_eq = [tuple(J[i]) + (0,) for i in range(r)]
        b_eq = [0] * r
        res = solve_lp((0,) * n + (1,), A_ub, b_ub, A_eq, b_eq)
        if res.status == "optimal" and res.value > 0:
            result = CQResult(True, res.x[:n])
        else:
            result = CQResult(False)
    if cross_check and result.holds != check_cq(sys).holds:
        raise RouteDisagreement("MFCQ and CQ disagree")
    return result


def constraint_lip(sys: ConstraintSystem, norms: NormPair = DEFAULT_NORMS) -> Fraction:
    """Modulus of ``S^-1`` at ``(ubar, xbar)``: ``1 / min ||J^T y||_*`` over
    normals ``y`` with ``||y||_* = 1``.

    ``norms.domain`` is the norm on the ``u``-space ``R^m`` and
    ``norms.codomain`` the one on ``R^n`` (the spaces of ``S^-1``).
    """
    cq = check_cq(sys)
    if not cq.holds:
        raise CQFails(cq.witness)
    K = sys.normal_D()
    if not K.nonzero_generators():
        return Fraction(0)
    du, dx = norms.domain.dual(), norms.codomain.dual()
    du.require_exact()
    dx.require_exact()
    m, n = sys.m, sys.n
    best = None
    # variables (y in R^m, s in R^k); minimise the dual x-norm of J^T y
    for L, c in du.linear_pieces(m):
        cell = intersect(K, L)
        if cell.is_empty() or not cell.nonzero_generators():
            continue
        A_ub, b_ub = [], []
        k = n if dx.kind == "one" else 1
        for a, b in cell.hrep:
            A_ub.append(tuple(a) + (0,) * k)
            b_ub.append(b)
        cols = [tuple(sys.jacobian[i][j] for i in range(m)) for j in range(n)]
        if dx.kind == "one":
            for j in range(n):
                for s in (1, -1):
                    A_ub.append(tuple(s * x for x in cols[j]) + tuple(-1 if t == j else 0 for t in range(n)))
                    b_ub.append(0)
            obj = (0,) * m + (1,) * n
        else:
            for j in range(n):
                for s in (1, -1):
                    A_ub.append(tuple(s * x for x in cols[j]) + (-1,))
                    b_ub.append(0)
            obj = (0,) * m + (1,)
        res = solve_lp(obj, A_ub, b_ub, [tuple(c) + (0,) * k], [1], maximize=False)
        if res.status == "optimal":
            best = res.value if best is None else min(best, res.value)
    if best is None:
        return Fraction(0)
    if best == 0:
        raise CQFails(None)
    return 1 / best


def materialize(sys: ConstraintSystem) -> PwpMap:
    """``gph S^-1 = {(u, x) : residual + J x - u in D}`` for affine ``F``; base point ``(0, 0)``."""
    rows = []
    for a, b in sys.D.hrep:
        rows.append((tuple(-x for x in a) + sys.jt(a), b - dot(a, sys.residual)))
    return PwpMap(sys.m, sys.n, [Polyhedron(sys.m + sys.n, hrep=rows)])


def certify_constraint_prefan(sys: ConstraintSystem, H: Prefan, strict: bool = False) -> Certificate:
    """Sufficient condition: every ``p`` has ``q in -H(-p)`` with ``J q - p in T_D``."""
    if (H.n, H.m) != (sys.m, sys.n):
        raise DimensionMismatch(f"prefan must map R^{sys.m} to R^{sys.n}")
    report = validate_prefan(H)
    if not report.ok:
        if strict:
            raise InvalidPrefan(report)
        return Certificate("certify", "not-applicable", "constraint-tangent", None, None,
                           H.norms, [str(report)])
    T = inverse_tangent(sys).graph.pieces[0]
    cones = []
    for c in H.cells:
        flipped = Polyhedron(c.graph.dim, hrep=[(tuple(-x for x in a), b) for a, b in c.graph.hrep])
        cones.append(intersect(T, flipped))
    res = coverage(cones, n=sys.m)
    notes = ["tangent condition on the inverse map (sufficient only for nonlinear F)"]
    if res.covered:
        return Certificate("certify", "holds", "constraint-tangent", None, None, H.norms, notes)
    p = res.witness
    return Certificate("certify", "fails", "constraint-tangent", {"p": p}, None, H.norms, notes)


def random_mfcq_system(rng, n: int, m: int, r: int, lo: int = -2, hi: int = 2) -> ConstraintSystem:
    """A random system with ``D = {0}^r x R_-^(m-r)`` and a random activity pattern."""
    J = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(m)]
    z = [Fraction(0)] * r + [Fraction(0) if rng.random() < 0.7 else Fraction(-1) for _ in range(m - r)]
    return ConstraintSystem(J, mfcq_form(m, r), z)

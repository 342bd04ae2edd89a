"""Exact two-phase simplex with Bland's rule (free variables)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T, basis, r, c):
    pr = T[r]
    pv = pr[c]
    if pv != 1:
        pr = [x / pv for x in pr]
        T[r] = pr
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                T[i] = [x - f * y for x, y in zip(row, pr)]
    basis[r] = c


def _run(T, basis, obj, allowed):
    """Maximise ``obj`` (a row of reduced costs kept as the last row of T)."""
    while True:
        z = T[-1]
        enter = None
        for j in allowed:
            if z[j] < 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        best = None
        leave = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    maximize: bool = True,
) -> LPResult:
    """Optimise ``c . x`` over ``{A_ub x <= b_ub, A_eq x = b_eq}``, ``x`` free."""
    n = len(c)
    c = [Fraction(v) for v in c]
    if not maximize:
        c = [-v for v in c]
    rows = []  # (coeffs over x+, x-, rhs, kind)
    for a, b in zip(A_ub, b_ub):
        rows.append(([Fraction(v) for v in a], Fraction(b), "ub"))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in a], Fraction(b), "eq"))
    m = len(rows)
    n_ub = sum(1 for r in rows if r[2] == "ub")
    # columns: x+ (n) | x- (n) | slacks (n_ub) | artificials (m) | rhs
    nx = 2 * n
    ncols = nx + n_ub + m
    T = []
    basis = []
    art_cols = []
    s = 0
    for i, (a, b, kind) in enumerate(rows):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            row[j] = a[j]
            row[n + j] = -a[j]
        slack_col = None
        if kind == "ub":
            slack_col = nx + s
            row[slack_col] = Fraction(1)
            s += 1
        row[-1] = b
        if b < 0:
            row = [-x for x in row]
        if kind == "ub" and b >= 0:
            basis.append(slack_col)
        else:
            ac = nx + n_ub + i
            row[ac] = Fraction(1)
            basis.append(ac)
            art_cols.append(ac)
        T.append(row)
    real_cols = list(range(nx + n_ub))
    if art_cols:
        z = [Fraction(0)] * (ncols + 1)
        for ac in art_cols:
            z[ac] = Fraction(1)
        T.append(z)
        for i, bcol in enumerate(basis):
            if bcol in art_cols:
                T[-1] = [x - y for x, y in zip(T[-1], T[i])]
        _run(T, basis, None, real_cols + art_cols)
        if T[-1][-1] != 0:
            return LPResult("infeasible")
        T.pop()
        # drive remaining artificials out of the basis
        i = 0
        while i < len(T):
            if basis[i] in art_cols:
                col = next((j for j in real_cols if T[i][j] != 0), None)
                if col is None:
                    T.pop(i)
                    basis.pop(i)
                    continue
                _pivot(T, basis, i, col)
            i += 1
    z = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        z[j] = -c[j]
        z[n + j] = c[j]
    T.append(z)
    for i, bcol in enumerate(basis):
        f = T[-1][bcol]
        if f:
            T[-1] = [x - f * y for x, y in zip(T[-1], T[i])]
    status = _run(T, basis, None, real_cols)
    if status == "unbounded":
        return LPResult("unbounded")
    vals = [Fraction(0)] * ncols
    for i, bcol in enumerate(basis):
        vals[bcol] = T[i][-1]
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value if maximize else -value)


def feasible_point(A_ub, b_ub, A_eq=(), b_eq=(), dim=None) -> Optional[tuple]:
    if dim is None:
        dim = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = solve_lp([0] * dim, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == "optimal" else None

"""Command-line front end: read a JSON problem file, answer its queries, print a report.

Exit codes: 0 when every query is answered and every verdict holds, 1 when
some verdict fails (the report carries the witness), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .constraints import (
    ConstraintSystem,
    certify_constraint_prefan,
    check_cq,
    check_mfcq,
    constraint_lip,
)
from .criteria import INF, certify_prefan, kappa_ball_certify, lip
from .errors import CQFails, InconsistentRepresentations, PolyvarError
from .fixtures import MAPS, PREFANS, h_prime
from .oracle import OracleBudget, falsify_definition, sample_lip_lower_bound
from .polykernel import PolyUnion, Polyhedron, set_equal
from .svmaps import NormPair, PHMap, Prefan, PrefanCell, PwpMap
from .varcalc import (
    coderivative,
    convexified_coderivative,
    convexified_coderivative_fiber,
    convexified_derivative,
    graphical_derivative,
    is_graphically_regular,
    limit_cones,
    limiting_normal_cone,
    regular_coderivative,
    regular_normal_cone,
    tangent_cone,
)

SCHEMA = "polyvar-report/1"
OUTPUT_ENV = "POLYVAR_OUTPUT"
QUERY_KINDS = ("tangent", "normal", "derivative", "limit-cones", "lip", "certify", "constraint", "oracle")


class ProblemError(PolyvarError, ValueError):
    """Malformed problem file; ``location`` is a JSON path like ``maps.S.pieces[0]``."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location


# ---------------------------------------------------------------------------
# parsing


def parse_scalar(v: Any, where: str) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ProblemError(f"expected an integer or a 'p/q' string, got {v!r}", where)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ProblemError(f"bad rational {v!r} ({e})", where) from None
    raise ProblemError(f"expected a rational, got {type(v).__name__}", where)


def parse_vector(v: Any, where: str, dim: Optional[int] = None) -> tuple:
    if not isinstance(v, list):
        raise ProblemError("expected a list of rationals", where)
    out = tuple(parse_scalar(x, f"{where}[{i}]") for i, x in enumerate(v))
    if dim is not None and len(out) != dim:
        raise ProblemError(f"expected length {dim}, got {len(out)}", where)
    return out


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise ProblemError("expected an object", where)
    if key not in obj:
        raise ProblemError(f"missing field {key!r}", where)
    return obj[key]


def _dim(obj: dict, where: str) -> int:
    d = _field(obj, "dim", where)
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise ProblemError("dim must be a nonnegative integer", f"{where}.dim")
    return d


def parse_polyhedron(obj: Any, where: str, dim: Optional[int] = None) -> Polyhedron:
    """``{dim, halfspaces: [{a, b}], equations: [{a, b}]}`` and/or ``{vertices, rays, lines}``.

    When both descriptions are present they must agree.
    """
    d = _dim(obj, where)
    if dim is not None and d != dim:
        raise ProblemError(f"expected dim {dim}, got {d}", f"{where}.dim")

    def rows(key):
        out = []
        for i, h in enumerate(obj.get(key, [])):
            w = f"{where}.{key}[{i}]"
            out.append((parse_vector(_field(h, "a", w), f"{w}.a", d), parse_scalar(_field(h, "b", w), f"{w}.b")))
        return out

    def gens(key):
        items = obj.get(key, [])
        if not isinstance(items, list):
            raise ProblemError("expected a list", f"{where}.{key}")
        return [parse_vector(g, f"{where}.{key}[{i}]", d) for i, g in enumerate(items)]

    has_h = "halfspaces" in obj or "equations" in obj
    has_v = any(k in obj for k in ("vertices", "rays", "lines"))
    P = Q = None
    if has_h:
        P = Polyhedron.from_hrep(d, rows("halfspaces"), rows("equations"))
    if has_v:
        verts = gens("vertices")
        if not verts and (obj.get("rays") or obj.get("lines")):
            raise ProblemError("generators need at least one vertex", f"{where}.vertices")
        Q = Polyhedron.from_vrep(d, verts, gens("rays"), gens("lines")) if verts else Polyhedron.empty(d)
    if P is None and Q is None:
        return Polyhedron.space(d)
    if P is not None and Q is not None and not set_equal(P, Q):
        raise InconsistentRepresentations(f"{where}: halfspaces and generators describe different sets")
    return P if P is not None else Q


def parse_union(obj: Any, where: str, dim: int) -> PolyUnion:
    if isinstance(obj, dict) and "pieces" in obj:
        obj = obj["pieces"]
    if not isinstance(obj, list):
        raise ProblemError("expected a list of polyhedra", where)
    return PolyUnion(dim, [parse_polyhedron(p, f"{where}[{i}]", dim) for i, p in enumerate(obj)])


def _nm(obj, where):
    n, m = _field(obj, "n", where), _field(obj, "m", where)
    for k, v in (("n", n), ("m", m)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ProblemError(f"{k} must be a positive integer", f"{where}.{k}")
    return n, m


def parse_definition(obj: Any, where: str, norms: NormPair):
    kind = _field(obj, "type", where)
    if kind == "builtin":
        name = _field(obj, "name", where)
        if name in MAPS:
            return MAPS[name]()
        if name in PREFANS:
            return PREFANS[name](norms)
        if name == "H_prime":
            return h_prime()
        raise ProblemError(f"unknown builtin {name!r}", f"{where}.name")
    if kind in ("map", "phmap"):
        n, m = _nm(obj, where)
        U = parse_union(_field(obj, "pieces", where), f"{where}.pieces", n + m)
        return (PHMap if kind == "phmap" else PwpMap)(n, m, U)
    if kind == "prefan":
        n, m = _nm(obj, where)
        cells = []
        for i, c in enumerate(_field(obj, "cells", where)):
            w = f"{where}.cells[{i}]"
            cells.append(PrefanCell(parse_polyhedron(_field(c, "domain_cone", w), f"{w}.domain_cone", n),
                                    parse_polyhedron(_field(c, "graph_cone", w), f"{w}.graph_cone", n + m)))
        return Prefan(n, m, cells, norms)
    if kind == "constraint":
        J = _field(obj, "jacobian", where)
        if not isinstance(J, list) or not J:
            raise ProblemError("jacobian must be a nonempty list of rows", f"{where}.jacobian")
        rows = [parse_vector(r, f"{where}.jacobian[{i}]") for i, r in enumerate(J)]
        m = len(rows)
        D = parse_polyhedron(_field(obj, "D", where), f"{where}.D", m)
        res = parse_vector(_field(obj, "residual", where), f"{where}.residual", m)
        return ConstraintSystem(rows, D, res)
    raise ProblemError(f"unknown type {kind!r}", f"{where}.type")


def load_problem(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ProblemError(str(e), path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(e.msg, f"{path}:{e.lineno}:{e.colno}") from None
    if not isinstance(data, dict):
        raise ProblemError("top level must be an object", path)
    return data


# ---------------------------------------------------------------------------
# encoding


def enc(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, (tuple, list)):
        return [enc(x) for x in v]
    if isinstance(v, dict):
        return {k: enc(x) for k, x in v.items()}
    if isinstance(v, Polyhedron):
        return encode_polyhedron(v)
    if isinstance(v, PolyUnion):
        return encode_union(v)
    return v


def encode_polyhedron(P: Polyhedron) -> dict:
    """Both descriptions; re-parseable by ``parse_polyhedron``."""
    P = P.minimal()
    return {
        "dim": P.dim,
        "halfspaces": [{"a": enc(a), "b": enc(b)} for a, b in P.hrep],
        "vertices": enc(P.vertices),
        "rays": enc(P.rays),
        "lines": enc(P.lines),
    }


def encode_union(U: PolyUnion) -> dict:
    return {"dim": U.dim, "pieces": [encode_polyhedron(p) for p in U.pieces]}


# ---------------------------------------------------------------------------
# queries


class Context:
    def __init__(self, defs: dict, norms: NormPair, route: Optional[str], budget: OracleBudget):
        self.defs = defs
        self.norms = norms
        self.route = route
        self.budget = budget

    def get(self, q: dict, key: str, where: str, types):
        name = _field(q, key, where)
        if name not in self.defs:
            raise ProblemError(f"unknown name {name!r}", f"{where}.{key}")
        obj = self.defs[name]
        if not isinstance(obj, types):
            raise ProblemError(f"{name!r} has the wrong type for {key!r}", f"{where}.{key}")
        return obj

    def point(self, q, S, where):
        x = parse_vector(q.get("x", ["0"] * S.n), f"{where}.x", S.n)
        y = parse_vector(q.get("y", ["0"] * S.m), f"{where}.y", S.m)
        return x, y


def _q_tangent(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    return {"cone": enc(tangent_cone(S.graph, x + y))}


def _q_normal(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    return {
        "regular": enc(regular_normal_cone(S, x, y)),
        "limiting": enc(limiting_normal_cone(S, x, y)),
        "clarke_regular": is_graphically_regular(S, x, y),
    }


_DERIVATIVES = {
    "graphical": graphical_derivative,
    "convexified": convexified_derivative,
    "coderivative": coderivative,
    "regular-coderivative": regular_coderivative,
    "convexified-coderivative": convexified_coderivative,
}


def _q_derivative(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    variant = q.get("variant", "graphical")
    if variant not in _DERIVATIVES:
        raise ProblemError(f"unknown variant {variant!r}", f"{w}.variant")
    out = {"variant": variant}
    coder = "coderivative" in variant
    if "at" in q:
        p = parse_vector(q["at"], f"{w}.at", S.m if coder else S.n)
        if variant == "convexified-coderivative":
            out["value"] = enc(convexified_coderivative_fiber(S, x, y, p))
        else:
            out["value"] = enc(_DERIVATIVES[variant](S, x, y).fiber(p))
        return out
    G = _DERIVATIVES[variant](S, x, y)
    out["graph"] = enc(G.graph)
    return out


def _q_limit_cones(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    L = limit_cones(S, x, y, bool(q.get("convexified", False)))
    return {"count": len(L), "cones": [enc(G.graph) for G in L], "sample_points": enc(L.sample_points)}


def _q_lip(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    route = q.get("route", ctx.route or "auto")
    return lip(S, x, y, ctx.norms, route).to_dict()


def _q_certify(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    route = q.get("route", ctx.route or "auto")
    if "kappa" in q:
        kappa = parse_scalar(q["kappa"], f"{w}.kappa")
        return kappa_ball_certify(S, x, y, kappa, ctx.norms, route).to_dict()
    H = ctx.get(q, "prefan", w, Prefan).with_norms(ctx.norms)
    return certify_prefan(S, x, y, H, route).to_dict()


def _q_constraint(ctx, q, w):
    sys_ = ctx.get(q, "system", w, ConstraintSystem)
    check = q.get("check", "cq")
    if check == "cq":
        r = check_cq(sys_)
        return {"check": "cq", "verdict": "holds" if r.holds else "fails", "witness": enc(r.witness)}
    if check == "mfcq":
        r = check_mfcq(sys_, q.get("r"))
        return {"check": "mfcq", "verdict": "holds" if r.holds else "fails", "direction": enc(r.witness)}
    if check == "lip":
        try:
            v = constraint_lip(sys_, ctx.norms)
        except CQFails as e:
            return {"check": "lip", "verdict": "fails", "modulus": "inf", "witness": enc(e.witness)}
        return {"check": "lip", "verdict": "holds", "modulus": enc(v), "norms": ctx.norms.describe()}
    if check == "certify":
        H = ctx.get(q, "prefan", w, Prefan).with_norms(ctx.norms)
        return certify_constraint_prefan(sys_, H).to_dict()
    raise ProblemError(f"unknown check {check!r}", f"{w}.check")


def _q_oracle(ctx, q, w):
    S = ctx.get(q, "map", w, PwpMap)
    x, y = ctx.point(q, S, w)
    mode = q.get("mode", "falsify")
    if mode == "lip-lower-bound":
        return {"mode": mode, "lower_bound": enc(sample_lip_lower_bound(S, x, y, ctx.budget, ctx.norms))}
    if mode != "falsify":
        raise ProblemError(f"unknown mode {mode!r}", f"{w}.mode")
    H = ctx.get(q, "prefan", w, (Prefan, PHMap))
    seeds = [parse_vector(s, f"{w}.seeds[{i}]", S.n) for i, s in enumerate(q.get("seeds", []))]
    res = falsify_definition(S, x, y, H, ctx.budget, ctx.norms, seeds)
    out = {"mode": mode, **res.to_dict()}
    out["verdict"] = "fails" if res.found else "no-violation-found"
    return out


HANDLERS = {
    "tangent": _q_tangent,
    "normal": _q_normal,
    "derivative": _q_derivative,
    "limit-cones": _q_limit_cones,
    "lip": _q_lip,
    "certify": _q_certify,
    "constraint": _q_constraint,
    "oracle": _q_oracle,
}


def run_problem(data: dict, norms: NormPair, route: Optional[str], budget: OracleBudget) -> tuple[dict, int]:
    """Answer every query; returns ``(report, exit_code)``.  Raises on input errors."""
    raw = data.get("maps", {})
    if not isinstance(raw, dict):
        raise ProblemError("maps must be an object", "maps")
    defs = {name: parse_definition(obj, f"maps.{name}", norms) for name, obj in raw.items()}
    ctx = Context(defs, norms, route, budget)
    queries = data.get("queries", [])
    if not isinstance(queries, list):
        raise ProblemError("queries must be a list", "queries")
    results, code = [], 0
    for i, q in enumerate(queries):
        w = f"queries[{i}]"
        kind = _field(q, "kind", w)
        if kind not in HANDLERS:
            raise ProblemError(f"unknown kind {kind!r}; expected one of {', '.join(QUERY_KINDS)}", f"{w}.kind")
        t = time.perf_counter()
        try:
            out = HANDLERS[kind](ctx, q, w)
        except ProblemError:
            raise
        except (PolyvarError, ValueError) as e:
            raise ProblemError(str(e), w) from e
        out = {"index": i, "kind": kind, **out, "seconds": round(time.perf_counter() - t, 4)}
        if out.get("verdict") in ("fails", "not-applicable"):
            code = 1
        results.append(out)
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "version": data.get("version"),
        "norms": norms.describe(),
        "results": results,
    }
    return report, code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyvar", description=__doc__.splitlines()[0])
    ap.add_argument("problem", help="JSON problem file")
    ap.add_argument("--norm", choices=("inf", "one"), default="inf",
                    help="norm on both spaces (duals are used for normals)")
    ap.add_argument("--route", choices=("primal", "convexified", "dual", "auto"), default=None,
                    help="default route for lip and certify queries")
    ap.add_argument("--oracle-budget", type=int, default=None, metavar="N",
                    help="random pairs per radius for oracle queries")
    ap.add_argument("--seed", type=int, default=0, metavar="K", help="oracle seed")
    out = ap.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", help="compact JSON")
    out.add_argument("--pretty", dest="output", action="store_const", const="pretty", help="indented JSON")
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    mode = args.output or os.environ.get(OUTPUT_ENV, "pretty")
    if mode not in ("json", "pretty"):
        mode = "pretty"
    budget_kw = {"seed": args.seed}
    if args.oracle_budget is not None:
        budget_kw["samples_per_pair"] = args.oracle_budget
    try:
        budget = OracleBudget(**budget_kw)
        data = load_problem(args.problem)
        report, code = run_problem(data, NormPair.of(args.norm), args.route, budget)
    except (PolyvarError, ValueError) as e:
        loc = getattr(e, "location", "")
        report = {"schema": SCHEMA, "tool_version": __version__,
                  "error": {"type": type(e).__name__, "message": getattr(e, "message", str(e)), "location": loc}}
        code = 2
    report["exit_code"] = code
    indent = 2 if mode == "pretty" else None
    sys.stdout.write(json.dumps(report, indent=indent) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

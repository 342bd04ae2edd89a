"""Recompute the worked one-dimensional examples and print a summary table.

Usage: python scripts/reproduce_examples.py [--norm inf|one]
"""
import argparse
import time
from fractions import Fraction

from polyvar.constraints import ConstraintSystem, check_cq, constraint_lip
from polyvar.criteria import certify_prefan, lip_via_normals, lip_via_tangents
from polyvar.fixtures import (
    g_maps, h_abs, h_half, h_identity, h_prime, h_prime_cells, h_relu, halfline_map, s1, s2, s3,
)
from polyvar.oracle import falsify_definition, sample_lip_lower_bound
from polyvar.polykernel import Polyhedron
from polyvar.svmaps import NormPair, validate_prefan
from polyvar.varcalc import is_graphically_regular, limit_cones

O = ((0,), (0,))
ROUTES = ("primal", "convexified", "dual")


def fmt(v):
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(fmt(x) for x in v) + ")"
    return str(v)


def row(label, value, expected):
    mark = "ok" if value == expected else "MISMATCH"
    print(f"  {label:<48} {str(value):<32} {mark}")
    return value == expected


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--norm", choices=("inf", "one"), default="inf")
    args = ap.parse_args(argv)
    norms = NormPair.of(args.norm)
    t0 = time.perf_counter()
    ok = True

    print("S1(x) = (-inf, -|x|] u [|x|, inf) at (0, 0)")
    S = s1()
    L = limit_cones(S, *O)
    ok &= row("limit cones", len(L), 6)
    ok &= row("limit cones equal to G1..G6", sum(L.index_of(G) is not None for G in g_maps().values()), 6)
    ok &= row("convexified limit cones", len(limit_cones(S, *O, convexified=True)), 5)
    for r in ROUTES:
        ok &= row(f"H(p) = [-|p|, |p|] via {r}", certify_prefan(S, *O, h_abs(norms), r, norms).verdict, "holds")
    c = certify_prefan(S, *O, h_half(norms), "auto", norms)
    ok &= row("H(p) = [-|p|/2, |p|]", c.verdict, "fails")
    print(f"    witness direction p = {fmt(c.witness['p'])}")

    print("S2(x) = {x, -x} at (0, 0)")
    S = s2()
    ok &= row("limit cones", len(limit_cones(S, *O)), 3)
    ok &= row("H(p) = [-|p|, |p|]", certify_prefan(S, *O, h_abs(norms), "auto", norms).verdict, "holds")
    ok &= row("H(p) = {p}", certify_prefan(S, *O, h_identity(norms), "auto", norms).verdict, "fails")

    print("S(x) = (-inf, x] at (0, 0)")
    S = halfline_map()
    ok &= row("graphically regular", is_graphically_regular(S, *O), True)
    for r in ("clarke", "primal", "dual"):
        ok &= row(f"H(p) = {{max(0, p)}} via {r}", certify_prefan(S, *O, h_relu(norms), r, norms).verdict, "holds")

    print("graphical modulus at (0, 0)")
    for name, make in (("S1", s1), ("S2", s2), ("(-inf, x]", halfline_map)):
        S = make()
        vals = {fmt(lip_via_tangents(S, *O, norms)), fmt(lip_via_tangents(S, *O, norms, True)),
                fmt(lip_via_normals(S, *O, norms))}
        ok &= row(f"{name}: tangents, convexified tangents, normals", sorted(vals), ["1"])
        print(f"    sampled lower bound {fmt(sample_lip_lower_bound(S, *O, norms=norms))}")

    print("non-convex H'(p) = {p, -p}")
    ok &= row("rejected as a prefan", validate_prefan(h_prime_cells(norms)).ok, False)
    r3 = falsify_definition(s3(), *O, h_prime())
    ok &= row("S3: violation found at y", fmt(r3.violation.y) if r3.found else None, "(0)")
    ok &= row("S1: violation found", falsify_definition(s1(), *O, h_prime()).found, False)

    print("constraint system F(x) = 2x in R_-")
    s = ConstraintSystem([[2]], Polyhedron.from_hrep(1, [((1,), 0)]), (0,))
    ok &= row("constraint qualification", check_cq(s).holds, True)
    ok &= row("modulus", fmt(constraint_lip(s, norms)), "1/2")

    print(f"{'all examples reproduced' if ok else 'MISMATCHES FOUND'} in {time.perf_counter() - t0:.2f} s")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Cross-check the certification routes and the sampling oracle on random maps.

For each random piecewise polyhedral map the primal, convexified and dual
routes must agree, the tangent and normal moduli must agree, and the ball
prefan must certify exactly at the modulus.

Usage: python scripts/random_route_agreement.py [--count N] [--dim D] [--seed K]
"""
import argparse
import random
import time
from collections import Counter
from fractions import Fraction

from polyvar.criteria import INF, certify_prefan, kappa_ball_certify, lip_via_normals, lip_via_tangents
from polyvar.instances import random_interval_prefan, random_prefan, random_pwp_map


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--dim", type=int, choices=(1, 2), default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    n = args.dim
    z = (0,) * n
    stats, bad = Counter(), []
    t0 = time.perf_counter()
    for i in range(args.count):
        S = random_pwp_map(rng, n, n)
        H = random_interval_prefan(rng) if n == 1 else random_prefan(rng, n, n)
        verdicts = {r: certify_prefan(S, z, z, H, r).verdict for r in ("primal", "convexified", "dual")}
        stats[f"prefan {verdicts['primal']}"] += 1
        if len(set(verdicts.values())) != 1:
            bad.append((i, "routes", verdicts))
        L = lip_via_normals(S, z, z)
        if L != lip_via_tangents(S, z, z) or L != lip_via_tangents(S, z, z, convexified=True):
            bad.append((i, "modulus", L))
        if L == INF:
            stats["infinite modulus"] += 1
            continue
        stats["finite modulus"] += 1
        if not kappa_ball_certify(S, z, z, L).holds:
            bad.append((i, "ball at modulus", L))
        if L > 0 and kappa_ball_certify(S, z, z, L * Fraction(3, 4)).holds:
            bad.append((i, "ball below modulus", L))
    print(f"{args.count} maps with n = m = {n}, seed {args.seed}: {dict(stats)}")
    for b in bad:
        print("  disagreement", b)
    print(f"{len(bad)} disagreements in {time.perf_counter() - t0:.2f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

import random
from fractions import Fraction

import pytest

from polyvar.criteria import certify_prefan
from polyvar.errors import InvalidPoint
from polyvar.fixtures import h_abs, h_half, h_prime, halfline_map, constant_interval, s1, s2, s3
from polyvar.instances import random_interval_prefan, random_pwp_map
from polyvar.oracle import (
    OracleBudget,
    falsify_definition,
    inclusion_gap,
    recheck_violation,
    sample_lip_lower_bound,
)

F = Fraction
O = ((0,), (0,))


def test_s3_with_nonconvex_h_has_violation_at_zero():
    res = falsify_definition(s3(), *O, h_prime())
    assert res.found and res.violation.y == (0,)
    assert recheck_violation(s3(), h_prime(), (0,), res.violation)


def test_s1_with_nonconvex_h_has_no_violation():
    assert not falsify_definition(s1(), *O, h_prime()).found


def test_s1_abs_no_violation_and_half_violation():
    assert not falsify_definition(s1(), *O, h_abs()).found
    c = certify_prefan(s1(), *O, h_half())
    res = falsify_definition(s1(), *O, h_half(), seeds=[c.witness["p"]])
    assert res.found and recheck_violation(s1(), h_half(), (0,), res.violation)


def test_deterministic_given_seed():
    b = OracleBudget(samples_per_pair=4, seed=3)
    a1 = falsify_definition(s1(), *O, h_half(), b)
    a2 = falsify_definition(s1(), *O, h_half(), b)
    assert a1 == a2


def test_inclusion_gap_direct():
    # S3(1) = [-1, 1] holds y = 0, but S3(0) + H'(1) = {-1, 1} misses it
    y = inclusion_gap(s3(), h_prime(), (F(1),), (F(0),), (F(0),), F(1), F(1, 4))
    assert y == (0,)


def test_budget_validation():
    with pytest.raises(ValueError):
        OracleBudget(delta_grid=(F(1, 16), F(1, 4)))
    with pytest.raises(ValueError):
        OracleBudget(radius_grid=())


def test_base_point_must_be_on_graph():
    with pytest.raises(InvalidPoint):
        falsify_definition(s1(), (F(1),), (F(0),), h_abs())


def test_lip_lower_bounds():
    assert sample_lip_lower_bound(s1(), *O) == 1
    assert sample_lip_lower_bound(halfline_map(), *O) == 1
    assert sample_lip_lower_bound(s2(), *O) == 1
    assert sample_lip_lower_bound(constant_interval(), (0,), (F(1, 2),)) == 0


def test_oracle_consistent_with_certificates():
    # conic graphs: a certified pair has no violation at any scale, and a
    # failing pair is refuted once the oracle is pointed at the witness
    rng = random.Random(3)
    counts = {True: 0, False: 0}
    budget = OracleBudget(samples_per_pair=2)
    for _ in range(40):
        S = random_pwp_map(rng, 1, 1, affine_rows=False)
        H = random_interval_prefan(rng)
        c = certify_prefan(S, *O, H)
        seeds = [c.witness["p"]] if c.witness else []
        res = falsify_definition(S, *O, H, budget, seeds=seeds)
        assert res.found == (not c.holds)
        counts[c.holds] += 1
    assert counts[True] and counts[False]

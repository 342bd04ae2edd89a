import random
from fractions import Fraction

import pytest

from polyvar.constraints import (
    ConstraintSystem,
    certify_constraint_prefan,
    check_cq,
    check_mfcq,
    constraint_lip,
    inverse_tangent,
    materialize,
    mfcq_form,
    random_mfcq_system,
)
from polyvar.criteria import lip_via_normals
from polyvar.errors import CQFails, DimensionMismatch, ResidualNotInD, WrongDShape
from polyvar.fixtures import h_abs, h_zero
from polyvar.polykernel import Polyhedron, set_equal
from polyvar.svmaps import NormPair, ball_prefan

F = Fraction
R_MINUS = Polyhedron.from_hrep(1, [((1,), 0)])


def system(J, D=R_MINUS, z=(0,)):
    return ConstraintSystem(J, D, z)


def test_scalar_examples():
    s = system([[2]])
    assert check_cq(s).holds
    assert constraint_lip(s) == F(1, 2)
    w = check_mfcq(s).witness
    assert 2 * w[0] < 0
    assert constraint_lip(system([[1]])) == 1


def test_cq_fails_with_witness():
    s = system([[0]])
    r = check_cq(s)
    assert not r.holds and r.witness[0] > 0
    with pytest.raises(CQFails):
        constraint_lip(s)
    assert not check_mfcq(s).holds


def test_inactive_constraint_is_free():
    s = system([[0]], z=(F(-1),))
    assert check_cq(s).holds and constraint_lip(s) == 0


def test_identity_system():
    s = ConstraintSystem([[1, 0], [0, 1]], mfcq_form(2, 0), (0, 0))
    w = check_mfcq(s).witness
    assert w[0] < 0 and w[1] < 0
    assert constraint_lip(s) == 1


def test_equality_rank():
    s = ConstraintSystem([[1, 1], [2, 2]], mfcq_form(2, 2), (0, 0))
    assert not check_cq(s).holds and not check_mfcq(s, 2).holds


def test_validation_errors():
    with pytest.raises(ResidualNotInD):
        system([[1]], z=(F(1),))
    with pytest.raises(DimensionMismatch):
        ConstraintSystem([[1], [2]], R_MINUS, (0,))
    box = Polyhedron.from_hrep(1, [((1,), 0), ((-1,), 1)])
    with pytest.raises(WrongDShape):
        check_mfcq(system([[1]], box))


def test_cq_equals_mfcq_on_random_systems():
    rng = random.Random(7)
    seen = {True: 0, False: 0}
    for _ in range(100):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        s = random_mfcq_system(rng, n, m, rng.randint(0, m), lo=-1, hi=1)
        a = check_cq(s).holds
        assert check_mfcq(s, cross_check=False).holds == a
        seen[a] += 1
    assert seen[True] and seen[False]


@pytest.mark.parametrize("norms", [NormPair.of("inf"), NormPair.of("one")])
def test_modulus_matches_materialized_graph(norms):
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        s = random_mfcq_system(rng, n, m, rng.randint(0, m))
        if not check_cq(s).holds:
            continue
        S = materialize(s)
        assert lip_via_normals(S, (0,) * m, (0,) * n, norms) == constraint_lip(s, norms)
        checked += 1
    assert checked >= 15


def test_inverse_tangent_graph():
    T = inverse_tangent(system([[2]]))
    # q with 2 q - p <= 0
    assert set_equal(T.graph, Polyhedron.cone(2, [(-1, 2)]))


def test_constraint_prefan_certification():
    s = system([[1]])
    assert certify_constraint_prefan(s, h_abs()).holds
    c = certify_constraint_prefan(s, h_zero())
    assert c.verdict == "fails" and c.witness["p"][0] < 0
    assert certify_constraint_prefan(system([[2]]), ball_prefan(1, 1, F(1, 2))).holds
    assert certify_constraint_prefan(system([[2]]), ball_prefan(1, 1, F(1, 4))).verdict == "fails"

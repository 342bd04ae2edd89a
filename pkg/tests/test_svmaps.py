import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyvar.errors import DimensionMismatch, NonPolyhedralNorm, NotACone
from polyvar.fixtures import (
    h_abs,
    h_half,
    h_identity,
    h_prime_cells,
    h_relu,
    h_unbounded,
    s1,
    s2,
    s3,
)
from polyvar.instances import random_pwp_map
from polyvar.polykernel import PolyUnion, Polyhedron, set_equal
from polyvar.svmaps import (
    NormPair,
    NormSpec,
    PHMap,
    Prefan,
    PrefanCell,
    PwpMap,
    ball_prefan,
    inflate,
    validate_prefan,
)

F = Fraction
grid = st.integers(-12, 12).map(lambda k: F(k, 4))


def interval(lo, hi):
    return Polyhedron.from_hrep(1, [((1,), hi), ((-1,), -lo)])


def test_s1_fibers():
    S = s1()
    assert set_equal(S.fiber((2,)), PolyUnion(1, [Polyhedron.from_hrep(1, [((-1,), -2)]),
                                                 Polyhedron.from_hrep(1, [((1,), -2)])]))
    assert S.contains((0,), (0,)) and not S.contains((1,), (0,))


def test_s3_fibers():
    S = s3()
    assert set_equal(S.fiber((2,)), interval(-2, 2))
    neg = S.fiber((-1,))
    assert neg.contains((1,)) and neg.contains((-1,)) and not neg.contains((0,))


@given(grid, grid)
def test_inverse_swaps_graph(x, y):
    for S in (s1(), s2(), s3()):
        assert S.invert().contains((y,), (x,)) == S.contains((x,), (y,))


def test_inverse_is_involution():
    rng = random.Random(0)
    for _ in range(10):
        S = random_pwp_map(rng, 1, 2)
        assert S.invert().invert().graph_equal(S)


def test_s1_inverse_is_the_band():
    # S1^-1(y) = [-|y|, |y|]: the inverse of S1 is not S1 itself
    inv = s1().invert()
    assert set_equal(inv.fiber((2,)), interval(-2, 2))
    assert not inv.graph_equal(s1())


def test_phmap_rejects_non_cones():
    with pytest.raises(NotACone):
        PHMap(1, 1, [Polyhedron.from_hrep(2, [((0, 1), 1)])])
    with pytest.raises(DimensionMismatch):
        PwpMap(1, 2, [Polyhedron.space(2)])


@given(grid)
def test_prefan_fibers(p):
    H = h_abs()
    assert set_equal(H.fiber((p,)), interval(-abs(p), abs(p)))
    assert set_equal(h_half().fiber((p,)), interval(-abs(p) / 2, abs(p)))
    assert set_equal(h_relu().fiber((p,)), Polyhedron.point((max(p, 0),)))


def test_fixture_prefans_are_valid():
    for H in (h_abs(), h_half(), h_identity(), h_relu()):
        assert validate_prefan(H).ok


def test_non_convex_prefan_is_rejected():
    rep = validate_prefan(h_prime_cells())
    assert not rep.ok and "convex" in rep.axioms()
    v = rep.first()
    assert v.witness is not None and v.witness != (0,)


def test_unbounded_prefan_is_rejected():
    rep = validate_prefan(h_unbounded())
    assert {"bounded", "coverage"} <= rep.axioms()


def test_overlap_and_convexity_violations():
    line, pos = Polyhedron.space(1), Polyhedron.cone(1, [(-1,)])
    disjoint = Prefan(1, 1, [PrefanCell(line, Polyhedron.cone(2, eq_rows=[(1, -1)])),
                             PrefanCell(line, Polyhedron.cone(2, eq_rows=[(0, 1)]))])
    assert validate_prefan(disjoint).axioms() == {"convex"}
    # [0, p] and [p/2, 2p] disagree but their union is an interval
    a = Polyhedron.cone(2, [(-1, 0), (0, -1), (-1, 1)])
    b = Polyhedron.cone(2, [(-1, 0), (1, -2), (-2, 1)])
    neg = Polyhedron.cone(1, [(1,)])
    zero = Polyhedron.cone(2, [(1, 0)], eq_rows=[(0, 1)])
    overlapping = Prefan(1, 1, [PrefanCell(pos, a), PrefanCell(pos, b), PrefanCell(neg, zero)])
    assert validate_prefan(overlapping).axioms() == {"overlap"}


def test_norms():
    x = (F(1), F(-3))
    assert NormSpec("inf").value(x) == 3 and NormSpec("one").value(x) == 4
    assert NormSpec("inf").dual().kind == "one"
    with pytest.raises(NonPolyhedralNorm):
        NormSpec("two").ball_rows(2)
    with pytest.raises(ValueError):
        NormSpec("max")


@pytest.mark.parametrize("kind", ["inf", "one"])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_linear_pieces_cover_and_agree(kind, dim):
    N = NormSpec(kind)
    pieces = N.linear_pieces(dim)
    assert set_equal(PolyUnion(dim, [L for L, _ in pieces]), Polyhedron.space(dim))
    rng = random.Random(dim)
    for _ in range(30):
        x = tuple(F(rng.randint(-5, 5)) for _ in range(dim))
        for L, c in pieces:
            if L.contains(x):
                assert sum(a * b for a, b in zip(c, x)) == N.value(x)


@given(grid, st.sampled_from([F(0), F(1, 2), F(1), F(3)]))
def test_ball_prefan_fibers(p, kappa):
    H = ball_prefan(1, 1, kappa)
    assert set_equal(H.fiber((p,)), interval(-kappa * abs(p), kappa * abs(p)))


def test_ball_prefan_2d_is_valid():
    for norms in (NormPair.of("inf"), NormPair.of("one")):
        H = ball_prefan(2, 2, F(3, 2), norms)
        assert validate_prefan(H).ok
        F_ = H.fiber((F(1), F(-2)))
        r = F(3, 2) * norms.domain.value((1, -2))
        assert set_equal(F_, Polyhedron(2, hrep=[(g, r) for g in norms.codomain.ball_rows(2)]))


@given(grid, st.sampled_from([F(1, 4), F(1)]))
def test_inflate_adds_a_ball(p, delta):
    H = inflate(h_half(), delta)
    r = delta * abs(p)
    assert set_equal(H.fiber((p,)), interval(-abs(p) / 2 - r, abs(p) + r))
    assert validate_prefan(H).ok


def test_scaled_prefan():
    H = h_half().scaled(2)
    assert set_equal(H.fiber((F(1),)), interval(-1, 2))

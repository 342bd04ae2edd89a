import random
from fractions import Fraction

import pytest

from polyvar.errors import NonPolyhedralResult, PointNotOnGraph
from polyvar.fixtures import g_maps, halfline_map, linear_map, s1, s2, s3
from polyvar.instances import random_pwp_map
from polyvar.polykernel import PolyUnion, Polyhedron, conic_hull, set_equal
from polyvar.svmaps import PwpMap
from polyvar.varcalc import (
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

F = Fraction
O = ((0,), (0,))


def ray(*v):
    return Polyhedron(len(v), vertices=[(0,) * len(v)], rays=[v])


def test_s1_limit_cones_are_g1_to_g6():
    L = limit_cones(s1(), *O)
    assert len(L) == 6
    found = sorted(L.index_of(G) for G in g_maps().values())
    assert found == list(range(6))


def test_s1_convexified_limit_cones():
    L = limit_cones(s1(), *O, convexified=True)
    assert len(L) == 5
    for G in L:
        assert len(G.graph) == 1


def test_limit_cone_counts():
    assert len(limit_cones(s2(), *O)) == 3
    assert len(limit_cones(s3(), *O)) == 6
    assert len(limit_cones(halfline_map(), *O)) == 2


def test_tangent_cone_at_points():
    S = s1()
    T = tangent_cone(S.graph, (1, 1))
    assert set_equal(T, Polyhedron.cone(2, [(1, -1)]))
    assert set_equal(graphical_derivative(S, *O).graph, S.graph)
    with pytest.raises(PointNotOnGraph):
        tangent_cone(S.graph, (1, 0))


def test_convexified_derivative():
    D = convexified_derivative(s2(), *O)
    assert set_equal(D.graph, Polyhedron.space(2))


def test_s1_normal_cones():
    N = limiting_normal_cone(s1(), *O)
    expected = PolyUnion(2, [ray(1, 1), ray(1, -1), ray(-1, 1), ray(-1, -1)])
    assert set_equal(N, expected)
    assert set_equal(regular_normal_cone(s1(), *O), Polyhedron.origin(2))


def test_halfline_normals_and_coderivative():
    S = halfline_map()
    assert set_equal(limiting_normal_cone(S, *O), ray(-1, 1))
    D = coderivative(S, *O)
    # v in D*S(u) iff (v, -u) is a normal: D*S(u) = {u} for u <= 0, empty for u > 0
    assert set_equal(D.fiber((F(-2),)), Polyhedron.point((F(-2),)))
    assert D.fiber((F(1),)).is_empty()
    assert set_equal(regular_coderivative(S, *O).graph, D.graph)


def test_linear_map_coderivative_is_transpose():
    S = linear_map(3)
    D = coderivative(S, *O)
    assert set_equal(D.fiber((F(2),)), Polyhedron.point((F(6),)))


def test_regularity():
    assert is_graphically_regular(halfline_map(), *O)
    assert is_graphically_regular(linear_map(2), *O)
    for S in (s1(), s2(), s3()):
        assert not is_graphically_regular(S, *O)


def test_convexified_coderivative_s2():
    # N(S2) is the union of the lines spanned by (1, -1) and (1, 1)
    D = coderivative(s2(), *O)
    assert set_equal(D.fiber((F(1),)), PolyUnion(1, [Polyhedron.point((F(1),)), Polyhedron.point((F(-1),))]))
    C = convexified_coderivative(s2(), *O)
    assert set_equal(C.fiber((F(1),)), Polyhedron.from_hrep(1, [((1,), 1), ((-1,), 1)]))
    assert set_equal(convexified_coderivative_fiber(s2(), *O, (F(1),)), C.fiber((F(1),)))


def test_convexified_coderivative_needs_scalar_codomain():
    S = random_pwp_map(random.Random(0), 1, 2)
    with pytest.raises(NonPolyhedralResult):
        convexified_coderivative(S, (0,), (0, 0))


def test_limit_cones_contain_every_nearby_tangent_cone():
    # for conic graphs the tangent cone at z equals that at t z, so every
    # graph point of a grid is "near" the origin
    rng = random.Random(4)
    pts = [(F(i, 2), F(j, 2)) for i in range(-4, 5) for j in range(-4, 5)]
    for _ in range(15):
        S = random_pwp_map(rng, 1, 1, affine_rows=False)
        L = limit_cones(S, *O)
        for z in pts:
            if S.graph.contains(z):
                T = tangent_cone(S.graph, z)
                assert any(set_equal(T, G.graph) for G in L), z
        for G, z in zip(L, L.sample_points):
            assert set_equal(G.graph, tangent_cone(S.graph, z))


def test_limiting_normals_from_tangent_polars():
    # independent route: union of polars of the tangent cones at grid points
    from polyvar.polykernel import intersect, polar

    rng = random.Random(8)
    pts = [(F(i, 2), F(j, 2)) for i in range(-4, 5) for j in range(-4, 5)]
    for _ in range(10):
        S = random_pwp_map(rng, 1, 1, affine_rows=False)
        N = limiting_normal_cone(S, *O)
        for z in pts:
            if S.graph.contains(z):
                T = tangent_cone(S.graph, z)
                Nz = intersect(*[polar(P) for P in T.pieces])
                assert all(N.contains(g) for g in Nz.nonzero_generators())

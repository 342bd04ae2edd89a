import random
from fractions import Fraction

import pytest

from polyvar.criteria import (
    INF,
    certify_prefan,
    dual_violated_at,
    inner_norm,
    kappa_ball_certify,
    lip,
    lip_via_normals,
    lip_via_tangents,
    outer_norm,
    recheck_witness,
)
from polyvar.errors import InvalidPrefan
from polyvar.fixtures import (
    constant_interval,
    g_maps,
    h_abs,
    h_half,
    h_identity,
    h_prime_cells,
    h_relu,
    h_zero,
    halfline_map,
    s1,
    s2,
    s3,
    vertical_line,
)
from polyvar.instances import random_interval_prefan, random_prefan, random_pwp_map
from polyvar.polykernel import linear_image, solve_lp
from polyvar.svmaps import NormPair, PHMap, PwpMap, inflate
from polyvar.varcalc import coderivative_criterion

F = Fraction
O = ((0,), (0,))
ROUTES = ("primal", "convexified", "dual", "auto")
NORMS = (NormPair.of("inf"), NormPair.of("one"))


# ---- norms ------------------------------------------------------------------


def test_inner_norms_of_g_maps():
    expected = {"G1": 1, "G2": 1, "G3": 1, "G4": 1, "G5": 0, "G6": 1}
    for name, G in g_maps().items():
        assert inner_norm(G) == expected[name], name


def test_outer_norms():
    assert outer_norm(h_abs()) == 1
    assert outer_norm(h_half()) == 1
    assert outer_norm(h_zero()) == 0
    assert outer_norm(PHMap(1, 1, vertical_line().graph)) == INF


def _min_inf_norm(P, m):
    # min ||z||_inf over P by LP: variables (z, t)
    A = [tuple(a) + (0,) for a, _ in P.hrep]
    b = [bb for _, bb in P.hrep]
    for j in range(m):
        for s in (1, -1):
            A.append(tuple(F(s if k == j else 0) for k in range(m)) + (-1,))
            b.append(0)
    return solve_lp((0,) * m + (1,), A, b, maximize=False).value


@pytest.mark.parametrize("m", [1, 2])
def test_inner_norm_against_direct_minimisation(m):
    # with n = 1 the unit sphere is {-1, 1}, so the sup is a max of two LPs
    rng = random.Random(m)
    for _ in range(25):
        G = PHMap(1, m, random_pwp_map(rng, 1, m, affine_rows=False).graph)
        vals = []
        for w in ((F(1),), (F(-1),)):
            fib = G.fiber(w).pieces
            vals.append(min((_min_inf_norm(P, m) for P in fib), default=INF))
        assert inner_norm(G) == max(vals)


# ---- moduli -----------------------------------------------------------------


@pytest.mark.parametrize("S,value", [(s1(), 1), (s2(), 1), (halfline_map(), 1),
                                     (constant_interval(), 0), (vertical_line(), INF)])
def test_lip_values_all_routes(S, value):
    x, y = ((0,), (0,)) if S.contains((0,), (0,)) else ((0,), (1,))
    for norms in NORMS:
        assert lip_via_tangents(S, x, y, norms) == value
        assert lip_via_tangents(S, x, y, norms, convexified=True) == value
        assert lip_via_normals(S, x, y, norms) == value
    assert lip(S, x, y).modulus == value


def test_lip_route_agreement_random():
    rng = random.Random(21)
    for trial in range(30):
        n = 1 if trial < 27 else 2
        S = random_pwp_map(rng, n, 1 if trial % 2 else n)
        x, y = (0,) * S.n, (0,) * S.m
        for norms in NORMS:
            a = lip_via_normals(S, x, y, norms)
            assert lip_via_tangents(S, x, y, norms) == a
            assert lip_via_tangents(S, x, y, norms, convexified=True) == a


# ---- certification ----------------------------------------------------------


def test_s1_certificates():
    for r in ROUTES:
        assert certify_prefan(s1(), *O, h_abs(), r).verdict == "holds"
        c = certify_prefan(s1(), *O, h_half(), r)
        assert c.verdict == "fails"
        assert recheck_witness(s1(), *O, h_half(), c.witness)


def test_dual_witness_is_a_normal():
    c = certify_prefan(s1(), *O, h_half(), "dual")
    w = c.witness
    assert {"p", "u", "v"} <= set(w)
    assert dual_violated_at(h_half(), w["p"], w["u"], w["v"])


def test_halfline_relu_regular_fastpath():
    S = halfline_map()
    for r in ("clarke", "primal", "dual", "convexified"):
        assert certify_prefan(S, *O, h_relu(), r).verdict == "holds"
    assert certify_prefan(S, *O, h_relu()).route == "clarke-fastpath"


def test_s2_certificates():
    for r in ROUTES:
        assert certify_prefan(s2(), *O, h_abs(), r).holds
        assert certify_prefan(s2(), *O, h_identity(), r).verdict == "fails"


def test_invalid_prefan_is_not_applicable():
    c = certify_prefan(s1(), *O, h_prime_cells())
    assert c.verdict == "not-applicable"
    with pytest.raises(InvalidPrefan):
        certify_prefan(s1(), *O, h_prime_cells(), strict=True)


def test_routes_agree_on_random_interval_prefans():
    rng = random.Random(31)
    for _ in range(40):
        S = random_pwp_map(rng, 1, 1)
        H = random_interval_prefan(rng)
        verdicts = {certify_prefan(S, *O, H, r).verdict for r in ROUTES}
        assert len(verdicts) == 1


def test_routes_agree_in_two_dimensions():
    rng = random.Random(32)
    for _ in range(6):
        S = random_pwp_map(rng, 2, 1)
        H = random_prefan(rng, 2, 1)
        x, y = (0, 0), (0,)
        verdicts = {r: certify_prefan(S, x, y, H, r).verdict for r in ("primal", "convexified", "dual")}
        assert len(set(verdicts.values())) == 1, verdicts


def test_coderivative_criterion_matches_certificate():
    # for n = m = 1 homogeneity reduces "all p, u" to p in {-1, 1}, u in {-1, 0, 1}
    rng = random.Random(41)
    for _ in range(30):
        S = random_pwp_map(rng, 1, 1, affine_rows=False)
        H = random_interval_prefan(rng)
        pointwise = all(coderivative_criterion(S, *O, H, (F(p),), (F(u),), cvx)
                        for p in (1, -1) for u in (1, 0, -1) for cvx in (False, True))
        assert pointwise == certify_prefan(S, *O, H, "dual").holds


def test_monotone_in_h():
    rng = random.Random(51)
    for _ in range(15):
        S = random_pwp_map(rng, 1, 1)
        H = random_interval_prefan(rng)
        if certify_prefan(S, *O, H).holds:
            assert certify_prefan(S, *O, inflate(H, F(1, 2))).holds


def _scale_map(S, k):
    M = [[F(1), F(0)], [F(0), F(k)]]
    return PwpMap(1, 1, [linear_image(P, M, 2) for P in S.graph])


def test_scaling_covariance():
    # y -> k y maps S to kS and H to kH; certification is unchanged
    rng = random.Random(61)
    for _ in range(15):
        S = random_pwp_map(rng, 1, 1)
        H = random_interval_prefan(rng)
        k = F(rng.choice((1, 2, 3)), rng.choice((1, 2)))
        assert certify_prefan(S, *O, H).verdict == certify_prefan(_scale_map(S, k), *O, H.scaled(k)).verdict


def test_aubin_special_case():
    for S in (s1(), s2(), s3(), halfline_map()):
        L = lip_via_normals(S, *O)
        assert kappa_ball_certify(S, *O, L).holds
        assert kappa_ball_certify(S, *O, L - F(1, 4)).verdict == "fails"
        assert kappa_ball_certify(S, *O, L + 1).holds


def test_infinite_modulus_never_certifies():
    S = vertical_line()
    assert kappa_ball_certify(S, *O, 100).verdict == "fails"


def test_certificate_serialises():
    d = certify_prefan(s1(), *O, h_half()).to_dict()
    assert d["verdict"] == "fails" and all(isinstance(t, str) for t in d["witness"]["p"])

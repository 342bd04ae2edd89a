"""Small one-dimensional maps and prefans used throughout the tests and CLI."""
from __future__ import annotations

from .polykernel import Polyhedron
from .svmaps import DEFAULT_NORMS, NormPair, PHMap, Prefan, PrefanCell, PwpMap


def _cone(*rows, eq=()):
    return Polyhedron.cone(2, rows, eq)


def _ray(sign):
    return Polyhedron.cone(1, [(-sign,)])


LINE = Polyhedron.space(1)
POS = _ray(1)   # p >= 0
NEG = _ray(-1)  # p <= 0

# ---- set-valued maps R => R (coordinates (x, y)) ----------------------------


def s1() -> PwpMap:
    """``S1(x) = (-inf, -|x|] u [|x|, inf)``."""
    return PwpMap(1, 1, [
        _cone((-1, 0), (1, -1)),   # x >= 0, y >= x
        _cone((1, 0), (-1, -1)),   # x <= 0, y >= -x
        _cone((-1, 0), (1, 1)),    # x >= 0, y <= -x
        _cone((1, 0), (-1, 1)),    # x <= 0, y <= x
    ])


def s2() -> PwpMap:
    """``S2(x) = {x} u {-x}``."""
    return PwpMap(1, 1, [_cone(eq=[(1, -1)]), _cone(eq=[(1, 1)])])


def s3() -> PwpMap:
    """``S3(x) = {x, -x}`` for ``x <= 0`` and ``[-x, x]`` for ``x >= 0``."""
    return PwpMap(1, 1, [
        _cone((1, 0), eq=[(1, -1)]),
        _cone((1, 0), eq=[(1, 1)]),
        _cone((-1, 1), (-1, -1)),
    ])


def halfline_map() -> PwpMap:
    """``S(x) = (-inf, x]``."""
    return PwpMap(1, 1, [_cone((-1, 1))])


def constant_interval() -> PwpMap:
    """``S(x) = [0, 1]``."""
    return PwpMap(1, 1, [Polyhedron.from_hrep(2, [((0, 1), 1), ((0, -1), 0)])])


def vertical_line() -> PwpMap:
    """Graph ``{x = 0}``: infinite modulus at the origin."""
    return PwpMap(1, 1, [_cone(eq=[(1, 0)])])


def linear_map(slope) -> PwpMap:
    return PwpMap(1, 1, [_cone(eq=[(slope, -1)])])


# ---- tangent cones of S1 near the origin ------------------------------------


def g_maps() -> dict[str, PHMap]:
    return {
        "G1": PHMap(1, 1, [_cone((1, -1))]),    # [x, inf)
        "G2": PHMap(1, 1, [_cone((-1, 1))]),    # (-inf, x]
        "G3": PHMap(1, 1, [_cone((-1, -1))]),   # [-x, inf)
        "G4": PHMap(1, 1, [_cone((1, 1))]),     # (-inf, -x]
        "G5": PHMap(1, 1, [_cone()]),           # R
        "G6": PHMap(1, 1, s1().graph),          # S1
    }


# ---- prefans R => R ---------------------------------------------------------


def h_abs(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = [-|p|, |p|]``."""
    return Prefan(1, 1, [
        PrefanCell(POS, _cone((-1, 0), (-1, 1), (-1, -1))),
        PrefanCell(NEG, _cone((1, 0), (1, 1), (1, -1))),
    ], norms)


def h_half(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = [-|p|/2, |p|]``."""
    return Prefan(1, 1, [
        PrefanCell(POS, _cone((-1, 0), (-1, 1), (-1, -2))),
        PrefanCell(NEG, _cone((1, 0), (1, 1), (1, -2))),
    ], norms)


def h_identity(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = {p}``."""
    return Prefan(1, 1, [PrefanCell(LINE, _cone(eq=[(1, -1)]))], norms)


def h_zero(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = {0}``."""
    return Prefan(1, 1, [PrefanCell(LINE, _cone(eq=[(0, 1)]))], norms)


def h_relu(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H(p) = {max(0, p)}``."""
    return Prefan(1, 1, [
        PrefanCell(POS, _cone((-1, 0), eq=[(1, -1)])),
        PrefanCell(NEG, _cone((1, 0), eq=[(0, 1)])),
    ], norms)


def h_prime() -> PHMap:
    """``H'(p) = {p, -p}``: positively homogeneous but not convex-valued."""
    return PHMap(1, 1, s2().graph)


def h_prime_cells(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """``H'`` forced into prefan shape (fails validation)."""
    return Prefan(1, 1, [
        PrefanCell(LINE, _cone(eq=[(1, -1)])),
        PrefanCell(LINE, _cone(eq=[(1, 1)])),
    ], norms)


def h_unbounded(norms: NormPair = DEFAULT_NORMS) -> Prefan:
    """Single cell with graph ``{q >= 0, p >= 0}``."""
    return Prefan(1, 1, [PrefanCell(POS, _cone((0, -1), (-1, 0)))], norms)


MAPS = {
    "S1": s1,
    "S2": s2,
    "S3": s3,
    "halfline": halfline_map,
    "constant": constant_interval,
    "vertical": vertical_line,
}

PREFANS = {
    "abs": h_abs,
    "half": h_half,
    "identity": h_identity,
    "zero": h_zero,
    "relu": h_relu,
}

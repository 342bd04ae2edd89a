"""Exact first-order variational analysis of piecewise-polyhedral set-valued maps.

Everything is computed over ``fractions.Fraction``.  The main entry points:

* ``svmaps``: maps, prefans and norms
* ``varcalc``: tangent cones, limit cones, normal cones, coderivatives
* ``criteria``: moduli and prefan certification by several routes
* ``constraints``: systems ``F(x) - D`` and their constraint qualifications
* ``oracle``: a sampling falsifier for the defining inclusion
"""
from .constraints import (
    ConstraintSystem,
    certify_constraint_prefan,
    check_cq,
    check_mfcq,
    constraint_lip,
    materialize,
    mfcq_form,
)
from .criteria import (
    Certificate,
    certify_prefan,
    inner_norm,
    kappa_ball_certify,
    lip,
    lip_via_normals,
    lip_via_tangents,
    outer_norm,
)
from .errors import *  # noqa: F401,F403
from .oracle import OracleBudget, falsify_definition, sample_lip_lower_bound
from .polykernel import PolyUnion, Polyhedron, coverage, relate, set_equal
from .svmaps import (
    DEFAULT_NORMS,
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
from .varcalc import (
    coderivative,
    convexified_coderivative,
    convexified_derivative,
    graphical_derivative,
    is_graphically_regular,
    limit_cones,
    limiting_normal_cone,
    regular_coderivative,
    regular_normal_cone,
    tangent_cone,
)

__version__ = "0.1.0"

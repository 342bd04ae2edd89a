"""Exact rational polyhedral geometry."""
from .arrangement import CoverageResult, Face, coverage, incident_faces, split_cells
from .lp import LPResult, feasible_point, solve_lp
from .polyhedron import (
    Polyhedron,
    conic_hull,
    convert,
    convex_hull,
    fiber,
    intersect,
    linear_image,
    minkowski,
    permute,
    polar,
    preimage,
    product,
    project,
    project_by_generators,
)
from .rational import Scalar, as_scalar
from .union import PolyUnion, Relation, is_subset, relate, set_equal, uncovered_point

__all__ = [
    "CoverageResult", "Face", "LPResult", "PolyUnion", "Polyhedron", "Relation", "Scalar",
    "as_scalar", "conic_hull", "convert", "convex_hull", "coverage", "feasible_point",
    "fiber", "incident_faces", "intersect", "is_subset", "linear_image", "minkowski",
    "permute", "polar", "preimage", "product", "project", "project_by_generators",
    "relate", "set_equal", "solve_lp", "split_cells", "uncovered_point",
]

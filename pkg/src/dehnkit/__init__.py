"""Normal surfaces, layered solid tori and Dehn fillings of knot-manifolds."""

from .filling import FilledTriangulation, cap_surface, distance, fill, line_of
from .layered import LayeredTorus, build_lst, classify_planar, layer_once, pad_lst
from .normal import (
    NormalCoords,
    SurfaceSummary,
    add,
    boundary_restriction,
    decompose_components,
    is_admissible,
    matching_matrix,
    summarize,
    weight,
)
from .perm import Perm4
from .reports import CandidateReport, candidates, emit
from .torus import (
    TorusCurve,
    complement_of,
    component_count,
    curve_type,
    from_intersections,
    length,
    slope_of,
    to_intersections,
    trivial_count,
)
from .triangulation import Triangulation, TriangulationError, parse_triangulation, read_triangulation
from .vertex import (
    FundamentalSet,
    VertexSolution,
    ale_constant,
    boundary_slope_set,
    carrier_slopes_check,
    enumerate_fundamental,
    enumerate_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateReport",
    "FilledTriangulation",
    "FundamentalSet",
    "LayeredTorus",
    "NormalCoords",
    "Perm4",
    "SurfaceSummary",
    "TorusCurve",
    "Triangulation",
    "TriangulationError",
    "VertexSolution",
    "add",
    "ale_constant",
    "boundary_restriction",
    "boundary_slope_set",
    "build_lst",
    "candidates",
    "cap_surface",
    "carrier_slopes_check",
    "classify_planar",
    "complement_of",
    "component_count",
    "curve_type",
    "decompose_components",
    "distance",
    "emit",
    "enumerate_fundamental",
    "enumerate_vertices",
    "fill",
    "from_intersections",
    "is_admissible",
    "layer_once",
    "length",
    "line_of",
    "matching_matrix",
    "pad_lst",
    "parse_triangulation",
    "read_triangulation",
    "slope_of",
    "summarize",
    "to_intersections",
    "trivial_count",
    "weight",
]

"""Exact enumeration of plane tropical curves via increasing lattice paths."""

from .lattice import (
    LatticePolygon,
    LinearOrder,
    NonInjectiveOrder,
    ToricDegree,
    boundary_chains,
    convex_hull,
    extremal_vertices,
    grid_rectangle,
    standard_triangle,
    toric_degree,
)
from .paths import (
    DecodedCurve,
    DualSubdivision,
    InvalidGenus,
    MalformedSubdivision,
    Side,
    count,
    decode,
    enumerate_paths,
    first_convex_vertex,
    mu,
    mu_side,
)
from .real import (
    Chain,
    IncompatibleGraph,
    MarkedDualGraph,
    SignedPath,
    ZeroStep,
    curve_real_multiplicity,
    mu_real,
    mu_real_side,
    nu_real_side,
    real_signed_count,
    sign_class_of,
    vertex_welschinger_sign,
    welschinger_count,
)
from .curves import (
    DegenerateSupport,
    NotSimple,
    ParallelDirections,
    PlaneTropicalCurve,
    TropicalPolynomial,
    canonicalize,
    check_balancing,
    curve_of,
    dual_subdivision,
    genus_of_simple,
    is_smooth,
    marked_dual_graph,
    vertex_multiplicity,
)

__all__ = [
    "LatticePolygon",
    "LinearOrder",
    "NonInjectiveOrder",
    "ToricDegree",
    "boundary_chains",
    "convex_hull",
    "extremal_vertices",
    "grid_rectangle",
    "standard_triangle",
    "toric_degree",
    "DecodedCurve",
    "DualSubdivision",
    "InvalidGenus",
    "MalformedSubdivision",
    "Side",
    "count",
    "decode",
    "enumerate_paths",
    "first_convex_vertex",
    "mu",
    "mu_side",
    "Chain",
    "IncompatibleGraph",
    "MarkedDualGraph",
    "SignedPath",
    "ZeroStep",
    "curve_real_multiplicity",
    "mu_real",
    "mu_real_side",
    "nu_real_side",
    "real_signed_count",
    "sign_class_of",
    "vertex_welschinger_sign",
    "welschinger_count",
    "DegenerateSupport",
    "NotSimple",
    "ParallelDirections",
    "PlaneTropicalCurve",
    "TropicalPolynomial",
    "canonicalize",
    "check_balancing",
    "curve_of",
    "dual_subdivision",
    "genus_of_simple",
    "is_smooth",
    "marked_dual_graph",
    "vertex_multiplicity",
]

__version__ = "0.1.0"

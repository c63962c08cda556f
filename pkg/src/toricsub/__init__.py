"""Exact computations for subtorus closures in toric manifolds.

Typical use::

    from toricsub import delzant_polytope, build_atlas, validate_subspace, classify

    poly = delzant_polytope([(0, 0), (2, 0), (0, 2)])
    atlas = build_atlas(poly)
    V = validate_subspace([(1, 1)], [1, 1])
    classify(atlas, poly, V).verdict   # "SMOOTH"
"""
from .charts import (
    ChartAtlas,
    build_atlas,
    chart_to_torus,
    in_transition_domain,
    torus_to_chart,
    transform_point,
    transition,
)
from .errors import (
    Dependent,
    DimensionMismatch,
    DimensionUnsupported,
    DomainViolation,
    NonPositiveOffset,
    NonRationalDirection,
    NotAVertex,
    NotAVertexImage,
    NotFullDimensional,
    NotPrimitive,
    NotSmooth,
    NotUnimodular,
    RankDeficient,
    SceneSemanticError,
    SceneSyntaxError,
    ToricError,
    UnknownLabel,
    ZeroCoordinate,
    ZeroVector,
)
from .moment import (
    canonical_fixed_point,
    face_collapse_check,
    fixed_stratum,
    moment_image,
    no_fixed_point_check,
    orthogonality_check,
    star_classification,
    vertex_status,
)
from .polytope import (
    DelzantPolytope,
    cone_is_pointed,
    delzant_polytope,
    facet_normals_at_vertex,
    hull_vertices,
    lattice_points,
    project_polytope,
    verify_delzant,
    vertex_edge_directions,
)
from .smoothness import (
    classify,
    numeric_rank_probe,
    restrict_to_stratum,
    stratum_intersects_locus,
    stratum_jacobian_rank,
)
from .subtorus import (
    AffineSubtorus,
    act,
    defining_equations,
    evaluate_equation,
    index_profile,
    parametrize,
    pullback_matrix,
    validate_subspace,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSubtorus",
    "ChartAtlas",
    "DelzantPolytope",
    "Dependent",
    "DimensionMismatch",
    "DimensionUnsupported",
    "DomainViolation",
    "NonPositiveOffset",
    "NonRationalDirection",
    "NotAVertex",
    "NotAVertexImage",
    "NotFullDimensional",
    "NotPrimitive",
    "NotSmooth",
    "NotUnimodular",
    "RankDeficient",
    "SceneSemanticError",
    "SceneSyntaxError",
    "ToricError",
    "UnknownLabel",
    "ZeroCoordinate",
    "ZeroVector",
    "act",
    "build_atlas",
    "canonical_fixed_point",
    "chart_to_torus",
    "classify",
    "cone_is_pointed",
    "defining_equations",
    "delzant_polytope",
    "evaluate_equation",
    "face_collapse_check",
    "facet_normals_at_vertex",
    "fixed_stratum",
    "hull_vertices",
    "in_transition_domain",
    "index_profile",
    "lattice_points",
    "moment_image",
    "no_fixed_point_check",
    "numeric_rank_probe",
    "orthogonality_check",
    "parametrize",
    "project_polytope",
    "pullback_matrix",
    "restrict_to_stratum",
    "star_classification",
    "stratum_intersects_locus",
    "stratum_jacobian_rank",
    "torus_to_chart",
    "transform_point",
    "transition",
    "validate_subspace",
    "verify_delzant",
    "vertex_edge_directions",
    "vertex_status",
]

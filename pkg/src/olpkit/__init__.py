"""Toolkit for ordered level graphs: exact solvers, hardness gadgets,
geometric reductions and verified drawings."""

from .core import (
    CrossingSet,
    Edge,
    EmbeddingWitness,
    MalformedWitnessError,
    OrderedLevelGraph,
    PolylineDrawing,
    PreconditionError,
    ResourceBudgetError,
    ValidationReport,
    Vertex,
    normalize_real_coordinates,
    validate_olg,
    verify_drawing_geometric,
    witness_check,
    witness_from_orders,
    witness_to_drawing,
)
from .satgadget import (
    ClauseShape,
    GadgetIndex,
    GadgetPiece,
    MergedClause,
    MergedRepresentation,
    Pm3SatInstance,
    assignment_to_witness,
    build_clause_gadget,
    build_merged_representation,
    build_tunnels,
    build_variable_gadget,
    clause_literals,
    reduce_pm3sat_to_olp,
    sat_brute_force,
    validate_representation,
    width2_transform,
)
from .geoplan import (
    AXES,
    DirectionSet,
    GeodesicDrawing,
    GeodesicInstance,
    adapt_general_directions,
    adjacent_pairs,
    build_rectilinear_drawing,
    direction_set,
    general_position_check,
    reduce_olp_to_bimonotone,
    reduce_olp_to_geodesic,
    shear_olp,
    split_to_matching,
    verify_bimonotone_drawing,
    verify_geodesic_drawing,
)
from .levelvariants import (
    ClusteredInstance,
    MalformedDrawingError,
    TLevelInstance,
    TargetDrawing,
    augment_drawing_clustered,
    augment_drawing_tlevel,
    reduce_olp_to_clustered,
    reduce_olp_to_tlevel,
    tree_leaves,
    verify_clustered_drawing,
    verify_tlevel_drawing,
)
from .solve import (
    SolveResult,
    oracle_enumerate,
    resolve_node_budget,
    solve,
    solve_deg_one,
    solve_exact,
    solve_proper,
)
from .io import (
    FormatError,
    emit_clvl,
    emit_drawing,
    emit_geo,
    emit_olg,
    emit_pm3sat,
    emit_tlvl,
    emit_witness,
    kind_of_path,
    parse_clvl,
    parse_drawing,
    parse_geo,
    parse_olg,
    parse_pm3sat,
    parse_tlvl,
    parse_witness,
    read_document,
    write_document,
)
from .gen import FAMILIES, gen_corpus, showcase_layout
from .render import DrawingRejectedError, RenderSpec, render_svg
from .cli import main as cli_main

__all__ = [
    "AXES",
    "ClauseShape",
    "ClusteredInstance",
    "CrossingSet",
    "DirectionSet",
    "DrawingRejectedError",
    "Edge",
    "EmbeddingWitness",
    "FAMILIES",
    "FormatError",
    "GadgetIndex",
    "GadgetPiece",
    "GeodesicDrawing",
    "GeodesicInstance",
    "MalformedDrawingError",
    "MalformedWitnessError",
    "MergedClause",
    "MergedRepresentation",
    "OrderedLevelGraph",
    "Pm3SatInstance",
    "PolylineDrawing",
    "PreconditionError",
    "RenderSpec",
    "ResourceBudgetError",
    "SolveResult",
    "TLevelInstance",
    "TargetDrawing",
    "ValidationReport",
    "Vertex",
    "adapt_general_directions",
    "adjacent_pairs",
    "assignment_to_witness",
    "augment_drawing_clustered",
    "augment_drawing_tlevel",
    "build_clause_gadget",
    "build_merged_representation",
    "build_rectilinear_drawing",
    "build_tunnels",
    "build_variable_gadget",
    "clause_literals",
    "cli_main",
    "direction_set",
    "emit_clvl",
    "emit_drawing",
    "emit_geo",
    "emit_olg",
    "emit_pm3sat",
    "emit_tlvl",
    "emit_witness",
    "gen_corpus",
    "general_position_check",
    "kind_of_path",
    "normalize_real_coordinates",
    "oracle_enumerate",
    "parse_clvl",
    "parse_drawing",
    "parse_geo",
    "parse_olg",
    "parse_pm3sat",
    "parse_tlvl",
    "parse_witness",
    "read_document",
    "reduce_olp_to_bimonotone",
    "reduce_olp_to_clustered",
    "reduce_olp_to_geodesic",
    "reduce_olp_to_tlevel",
    "reduce_pm3sat_to_olp",
    "render_svg",
    "resolve_node_budget",
    "sat_brute_force",
    "shear_olp",
    "showcase_layout",
    "solve",
    "solve_deg_one",
    "solve_exact",
    "solve_proper",
    "split_to_matching",
    "tree_leaves",
    "validate_olg",
    "validate_representation",
    "verify_bimonotone_drawing",
    "verify_clustered_drawing",
    "verify_drawing_geometric",
    "verify_geodesic_drawing",
    "verify_tlevel_drawing",
    "witness_check",
    "witness_from_orders",
    "witness_to_drawing",
    "write_document",
]

__version__ = "0.1.0"

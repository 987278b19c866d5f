"""IV-matching on layered graphs: validation, verification, an exact solver,
and the reduction from three-dimensional matching."""

from .generators import GenConfig, gen_3dm, gen_ivg
from .hypergraph import TripartiteHypergraph, brute_force_3dm, verify_3dm_matching
from .model import (
    CountInfeasible,
    IVMatching,
    LayeredGraph,
    Report,
    ShapeI,
    ShapeV,
    SizeLimitError,
    VertexRef,
    Violation,
    ViolationCode,
    edge_count,
    expand_vertices,
    interface_v_totals,
    normalize,
    validate_graph,
    verify_matching,
)
from .reduction import (
    InvalidCertificate,
    InvalidMatching,
    ReductionMap,
    embed_from_3dm,
    lift_to_3dm,
    reduce_3dm,
)
from .solver import (
    Reason,
    SolveResult,
    Status,
    branch_v_distribution,
    brute_force_iv,
    preprocess_odd,
    reconstruct_certificate,
    solve,
    solve_two_layers,
)
from .flow import transportation_feasible

__version__ = "0.1.0"

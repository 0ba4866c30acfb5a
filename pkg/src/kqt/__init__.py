"""Structure of strong k-quasi-transitive digraphs with a long shortest path."""

from .digraph import (
    INFINITY,
    Digraph,
    adjacent,
    bfs_distances,
    complete_digraph,
    converse,
    diameter,
    directed_cycle,
    directed_path,
    distance,
    enumerate_simple_paths,
    from_edge_list,
    induced,
    is_strong,
    to_dot,
    to_edge_list,
    validate_cycle,
    validate_path,
)
from .engine import (
    PRNG_ID,
    ClosureFailure,
    ClosurePolicy,
    GenerationFailure,
    Violation,
    enumerate_all_digraphs,
    find_violation,
    generate_frame_instance,
    is_k_quasi_transitive,
    kqt_closure,
    mirror_frame_instance,
)
from .errors import HypothesisFailure, KqtError, ParseError, StructuralViolation, UsageError
from .structure import Classification, ShortestPathFrame, StructureClass, classify_all, classify_induced, find_frame

__version__ = "0.1.0"
